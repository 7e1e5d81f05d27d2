use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("coefficient conversion undefined: {0}")]
    DegenerateConversion(String),

    #[error("dense dimension {dim} exceeds the cap of {cap}")]
    DimensionLimitExceeded { dim: usize, cap: usize },

    #[error("vector length {got} does not match operator dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("r = {0} is not prime")]
    NonPrimeR(usize),

    #[error("eigenvalue class has zero eigenvalue; eigenvector construction is singular")]
    ZeroEigenvalueClass,

    #[error("word {word:?} cannot generate phase j = {phase}")]
    DegenerateWord { word: Vec<u8>, phase: usize },

    #[error("invalid encoding word: {0}")]
    InvalidWord(String),

    #[error("weights sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },

    #[error("p = {0} is not supported here (only p = 2)")]
    UnsupportedP(usize),

    #[error("series did not converge within {terms} terms")]
    NonConvergent { terms: usize },

    #[error("spectral gap vanishes: equilibration time is infinite")]
    DegenerateGap,

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Variant name, printed by the command-line front end.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidParams(_) => "InvalidParams",
            Error::DegenerateConversion(_) => "DegenerateConversion",
            Error::DimensionLimitExceeded { .. } => "DimensionLimitExceeded",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NonPrimeR(_) => "NonPrimeR",
            Error::ZeroEigenvalueClass => "ZeroEigenvalueClass",
            Error::DegenerateWord { .. } => "DegenerateWord",
            Error::InvalidWord(_) => "InvalidWord",
            Error::NotNormalized { .. } => "NotNormalized",
            Error::UnsupportedP(_) => "UnsupportedP",
            Error::NonConvergent { .. } => "NonConvergent",
            Error::DegenerateGap => "DegenerateGap",
            Error::Usage(_) => "Usage",
            Error::Io(_) => "Io",
            Error::Json(_) => "Json",
            Error::Csv(_) => "Csv",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
