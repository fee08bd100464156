use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A refinement loop ran out of its escalation budget.
    #[error("{op}: no convergence after {attempts} escalation(s)")]
    PrecisionExhausted { op: &'static str, attempts: u32 },

    #[error("quadrature did not converge with {points} points (last change {last_change:e})")]
    QuadratureNonConvergence { points: usize, last_change: f64 },

    #[error("sieve limit {requested} exceeds capacity {limit}")]
    Capacity { requested: u64, limit: u64 },

    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("descriptor `{0}` lacks arithmetic data (no Λ_F coefficients)")]
    MissingArithmeticData(String),

    #[error("unsupported descriptor: {0}")]
    UnsupportedDescriptor(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("zero table line {line}: {msg}")]
    ZeroTableParse { line: usize, msg: String },

    #[error("zero table line {line}: ordinate not strictly greater than the previous one")]
    ZeroTableOrder { line: usize },

    #[error("zero table is empty")]
    EmptyZeroTable,

    #[error("eta table covers {available} constants, {needed} needed")]
    InsufficientEta { needed: usize, available: usize },

    #[error("eta table holds {available} bits, {needed} bits requested")]
    InsufficientEtaPrecision { needed: u32, available: u32 },

    #[error("descriptor format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by malformed or missing input data files.
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            Error::ZeroTableParse { .. }
                | Error::ZeroTableOrder { .. }
                | Error::EmptyZeroTable
                | Error::Format(_)
                | Error::Io(_)
        )
    }
}
