//! Stabilizer-code welding, surface and solid code builders, and exact and
//! parity-bounded energy barriers for CSS codes.

pub mod bits;
pub mod css;
pub mod energy;
pub mod error;
pub mod format;
pub mod gf2;
pub mod pauli;
pub mod regions;
pub mod sampling;
pub mod welding;
pub mod builders;

pub use bits::BitVec;
pub use css::{CssCode, Distance, GenRef, GeneratingSet, LogicalClass, Syndrome};
pub use error::{Error, Result};
pub use pauli::{CssType, PauliKind, PauliOperator, QubitSet};
pub use regions::FlatRegionGraph;
pub use welding::{weld, weld_oracle, QubitIdentification, WeldResult};
pub use energy::{
    exact_barrier, parity_lower_bound, verify_bound, BarrierMethod, BarrierResult, PauliWalk,
    SearchOptions,
};
pub use format::{from_json, from_text, parse_code, to_json, to_text};
