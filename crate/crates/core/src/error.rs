use thiserror::Error;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Precondition,
    Numerical,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group closure exceeds the maximum order {max_order}")]
    GroupTooLarge { max_order: usize },

    #[error("subgroup enumeration budget of {budget} closures exceeded")]
    BudgetExceeded { budget: usize },

    #[error("{0}")]
    Precondition(String),

    #[error("action is not free: {0}")]
    NotFree(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("character table construction failed at class {class}: {message}")]
    CharacterTable { class: usize, message: String },

    #[error("{context}: value {value} is not within {tol:e} of a nonnegative integer")]
    NonIntegral {
        value: f64,
        tol: f64,
        context: String,
    },

    #[error("heat trace tail bound {bound:e} exceeds tolerance {tol:e} at t = {t}; increase nmax")]
    TailBound { t: f64, bound: f64, tol: f64 },

    #[error("{0}")]
    Numerical(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } => ErrorKind::Parse,
            Error::InvalidPermutation(_)
            | Error::GroupTooLarge { .. }
            | Error::BudgetExceeded { .. }
            | Error::Precondition(_)
            | Error::NotFree(_)
            | Error::Disconnected => ErrorKind::Precondition,
            Error::CharacterTable { .. }
            | Error::NonIntegral { .. }
            | Error::TailBound { .. }
            | Error::Numerical(_) => ErrorKind::Numerical,
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Rounds `value` to the nearest nonnegative integer, failing when it is
/// further than `tol` away.
pub(crate) fn to_count(value: f64, tol: f64, context: impl FnOnce() -> String) -> Result<u64> {
    let rounded = value.round();
    if !value.is_finite() || (value - rounded).abs() > tol || rounded < 0.0 {
        return Err(Error::NonIntegral {
            value,
            tol,
            context: context(),
        });
    }
    Ok(rounded as u64)
}
