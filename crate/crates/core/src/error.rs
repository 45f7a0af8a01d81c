use thiserror::Error;

/// Errors raised by the library.
///
/// [`Error::is_feasibility`] separates "instance too large for an exhaustive
/// method" from genuine validation failures, so callers can skip oversized
/// points instead of aborting.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("qubit index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("generator {index} is not in standard CSS form ({kind}-type list holds {found})")]
    NotCssForm { kind: char, index: usize, found: String },

    #[error("generators X{x_index} and Z{z_index} anticommute")]
    Anticommuting { x_index: usize, z_index: usize },

    #[error("invalid logical class {index}: {reason}")]
    InvalidLogical { index: usize, reason: String },

    #[error("generator {0} is dependent on the others and cannot be promoted")]
    DependentGenerator(String),

    #[error("no generator {0}")]
    NoSuchGenerator(String),

    #[error("operator is not a logical operator: {0}")]
    NotLogical(String),

    #[error("code encodes no qubits")]
    NoLogicalQubits,

    #[error("declared k={declared} but generators encode k={computed}")]
    DeclaredKMismatch { declared: usize, computed: usize },

    #[error("welding requires codes with zero encoded qubits (code {side} encodes {k})")]
    NonzeroK { side: usize, k: usize },

    #[error("invalid qubit identification: {0}")]
    InvalidIdentification(String),

    #[error("self-welding (identifying qubits within one code) is not supported")]
    SelfWeld,

    #[error("generating sets are not well matched: {0}")]
    NotWellMatched(String),

    #[error("generating set of code {side} is not linearly independent on the weld: generators {subset:?} multiply to an operator trivial on the weld")]
    NotWeldIndependent { side: usize, subset: Vec<usize> },

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("incompatible boundaries: {0}")]
    IncompatibleBoundary(String),

    #[error("code carries no flat-region metadata for {0}-type particles")]
    MissingRegionMetadata(char),

    #[error("instance too large: {what} = {size} exceeds cap {cap}")]
    TooLarge { what: String, size: u64, cap: u64 },

    #[error("no walk reaches the target coset")]
    Unreachable,

    #[error("mixed Pauli kinds in a walk")]
    MixedWalk,

    #[error("parity bound {bound} exceeds exact barrier {exact}")]
    BoundViolated { bound: usize, exact: usize },
}

impl Error {
    pub fn is_feasibility(&self) -> bool {
        matches!(self, Error::TooLarge { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
