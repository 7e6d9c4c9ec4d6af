use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("spin magnitude must be a positive multiple of 1/2, got {0}")]
    InvalidSpin(f64),

    #[error("n-spins must be even and at least 2, got {0}")]
    InvalidSpinCount(usize),

    #[error("brute-force reference is limited to n-spins <= {max}, got {got}")]
    OracleTooLarge { got: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("window [{start}, {end}] does not fit in a series of length {len}")]
    WindowOutOfRange { start: usize, end: usize, len: usize },

    #[error("DFT window needs at least {min} samples, got {got}")]
    WindowTooShort { got: usize, min: usize },

    #[error("invalid config: {0}")]
    Config(String),

    #[error("{path}: {msg}")]
    Resume { path: PathBuf, msg: String },

    #[error("output {0} already exists; resume it or remove it first")]
    OutputExists(PathBuf),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
