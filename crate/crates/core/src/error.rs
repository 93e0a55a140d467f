use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// State captured when a proof-backed assertion fails, so the failure can
/// be replayed: the instance in the text format and the partition as a
/// single line of class indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub instance: String,
    pub assignment: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# instance")?;
        f.write_str(&self.instance)?;
        writeln!(f, "# partition")?;
        writeln!(f, "{}", self.assignment)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An invariant guaranteed by the underlying combinatorics did not hold.
    /// This always indicates a bug in this crate.
    #[error("internal logic error: {message}")]
    Logic {
        message: String,
        diagnostic: Option<Box<Diagnostic>>,
    },

    #[error("budget exceeded: {required} assignments required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn logic(msg: impl Into<String>) -> Self {
        Error::Logic {
            message: msg.into(),
            diagnostic: None,
        }
    }

    pub fn diagnostic(&self) -> Option<&Diagnostic> {
        match self {
            Error::Logic { diagnostic, .. } => diagnostic.as_deref(),
            _ => None,
        }
    }
}
