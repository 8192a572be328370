use thiserror::Error;

/// Errors raised by construction, verification and file parsing.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("rows are linearly dependent")]
    DependentRows,

    #[error("row space of the subspace is not contained in the superspace")]
    NotContained,

    #[error("invalid stabilizer: {0}")]
    InvalidStabilizer(String),

    #[error("basis shape error: {0}")]
    Shape(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("code is not weakly self-dual")]
    NotWeaklySelfDual,

    #[error("code dimension {k} exceeds the exhaustive-search limit {limit}")]
    CodeTooLarge { k: usize, limit: usize },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("criterion inapplicable: {0}")]
    CriterionInapplicable(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
