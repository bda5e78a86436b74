use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("config line {line}: {message}")]
    ConfigParse { line: usize, message: String },

    #[error("non-finite distribution value after step {step} (t = {time})")]
    NonFinite { step: usize, time: f64 },

    #[error("step {step} at t = {time} failed: {source}")]
    StepFailed {
        step: usize,
        time: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("time step {dt} violates the CFL-1 limit {limit} of the conservative update")]
    CflViolation { dt: f64, limit: f64 },

    #[error("trace cascade misuse: expected order-{expected} input, got order {got}")]
    CascadeOrder { expected: u8, got: u8 },

    #[error("grids do not nest: {coarse} cells is not an odd divisor of {fine}")]
    NonNesting { coarse: usize, fine: usize },

    #[error("rate fit: {0}")]
    Fit(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
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
