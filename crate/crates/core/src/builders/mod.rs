//! Constructors for the code families used throughout the crate.
//!
//! Every builder returns a validated [`CssCode`]; lattice builders also attach
//! flat-region metadata for both particle types where it is known by
//! construction.

mod graph;
mod pieces;
mod solid;
mod surface;

pub use graph::{GraphGeometry, WeldGraph};
pub use pieces::{weld_pieces_direct, weld_pieces_sequential, Piece, PieceWeld};
pub use solid::{build_solid, build_solid_by_welding, build_welded_solid, build_welded_solid_by_welding, SolidSpec};
pub use surface::{
    build_surface, build_surface_by_welding, build_welded_surface, build_welded_surface_by_welding,
    surface_welding_chain, BoundaryKind, ChainStage, StringLogicals, SurfaceSpec,
};

use crate::css::{CssCode, GeneratingSet};
use crate::error::Result;
use crate::pauli::{CssType, PauliOperator};
use crate::css::LogicalClass;

/// `<XX, ZZ>` on two qubits.
pub fn build_two_qubit() -> CssCode {
    let gens = GeneratingSet::from_supports(2, &[vec![0, 1]], &[vec![0, 1]]);
    CssCode::from_gens(gens).expect("two-qubit code is valid")
}

/// Repetition code on `n` qubits: X on neighbouring pairs, with
/// logical `Z...Z` and partner `X` on qubit 0.
pub fn build_repetition(n: usize) -> Result<CssCode> {
    if n == 0 {
        return Err(crate::error::Error::InvalidSpec("repetition code needs n >= 1".into()));
    }
    let x: Vec<Vec<usize>> = (0..n - 1).map(|i| vec![i, i + 1]).collect();
    let gens = GeneratingSet::from_supports(n, &x, &[]);
    CssCode::new(
        gens,
        vec![LogicalClass {
            z_rep: PauliOperator::pure(CssType::Z, n, 0..n),
            x_rep: PauliOperator::pure(CssType::X, n, [0]),
        }],
    )
}
