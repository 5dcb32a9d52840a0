use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("graph is disconnected{}", level.map(|n| format!(" at level {n}")).unwrap_or_default())]
    Disconnected { level: Option<usize> },

    #[error("{count} non-loop edges exceed the enumeration cap of {cap}")]
    TooManyEdges { count: usize, cap: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("coset representatives do not form a transversal")]
    NotTransversal,

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("orbit product has nonzero coordinates above degree 0")]
    NonRationalDescent,

    #[error("operation is only defined for one-variable series")]
    MultivariableUnsupported,

    #[error("the series is zero")]
    ZeroSeries,

    #[error("operands live in different rings: {0}")]
    RingMismatch(String),

    #[error("square root check failed at vertex `{0}`")]
    InvalidSqrt(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("identity check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
