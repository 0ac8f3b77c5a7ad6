use thiserror::Error;

/// Errors raised by state construction and the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected {expected} amplitudes, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("all amplitudes are zero; a state must be a nonzero vector")]
    ZeroState,

    #[error("amplitude {index} is not finite")]
    NonFiniteAmplitude { index: usize },

    #[error("factor list is empty")]
    EmptyFactorList,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unknown state name `{0}`")]
    UnknownName(String),

    #[error("operation needs {expected} qubits, state has {found}")]
    WrongQubitCount { expected: usize, found: usize },

    #[error("operation needs at least {min} qubits, state has {found}")]
    TooFewQubits { min: usize, found: usize },

    #[error("operation is defined for an even number of qubits, state has {0}")]
    OddQubitCount(usize),

    #[error("unsupported polytope: {0}")]
    UnsupportedPolytope(String),

    #[error("interval on axis {axis} is degenerate")]
    DegenerateInterval { axis: usize },

    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
