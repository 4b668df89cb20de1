use thiserror::Error;

use crate::expr::ExprError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no mean value abscissa found on [{a}, {b}] with {grid} grid cells; retry with a larger grid")]
    NoRoot { a: f64, b: f64, grid: usize },
    #[error("polynomial degree {degree} exceeds the expansion cap of {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("{context}: {source}")]
    At {
        context: String,
        #[source]
        source: ExprError,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Attach where an evaluation failed (interval, sample point, ...).
    pub(crate) fn at(context: impl Into<String>, source: ExprError) -> Self {
        Error::At {
            context: context.into(),
            source,
        }
    }

    /// Usage-type errors as opposed to numeric failures.
    pub fn is_usage(&self) -> bool {
        match self {
            Error::InvalidArgument(_) | Error::DegreeTooLarge { .. } => true,
            Error::Expr(e) => !e.is_numeric(),
            Error::At { .. } | Error::NoRoot { .. } => false,
        }
    }
}
