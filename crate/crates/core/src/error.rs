use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cutoff {got} is below the minimum of {min}")]
    CutoffTooSmall { got: usize, min: usize },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("requested {requested} eigenpairs from a matrix of dimension {dimension}")]
    CountOutOfRange { requested: usize, dimension: usize },

    #[error("{operation} needs the {required} regime, found {found}")]
    Regime {
        operation: &'static str,
        required: &'static str,
        found: &'static str,
    },

    #[error("outside the supported domain: {0}")]
    Domain(String),

    #[error("solver failure: {0}")]
    Solver(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("{0}")]
    Rejected(String),

    #[error("line {line}: {message}")]
    Config { line: usize, message: String },
}
