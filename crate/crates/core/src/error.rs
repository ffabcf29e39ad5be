use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("budget exceeded in {what} at dimension {dim}")]
    BudgetExceeded { what: String, dim: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("malformed structure: {0}")]
    Malformed(String),

    #[error("Segal defect: {0}")]
    SegalDefect(String),

    #[error("missing composite: {0}")]
    MissingComposite(String),

    #[error("non-termination: {0}")]
    NonTermination(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("window {requested} exceeds the stored rows (0..={available})")]
    WindowExceeded { requested: usize, available: usize },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, message: msg.into() }
    }

    pub fn budget(what: impl Into<String>, dim: usize) -> Self {
        Error::BudgetExceeded { what: what.into(), dim }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Explicit limits for every enumeration. Exceeding one is an error, never a
/// silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of simplices (nondegenerate or total, depending on the
    /// construction) a single object may have.
    pub simplices: usize,
    /// Maximum simplicial dimension any construction may reach.
    pub dim: usize,
    /// Maximum number of search nodes visited by one backtracking search.
    pub nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { simplices: 200_000, dim: 12, nodes: 50_000_000 }
    }
}

impl Budget {
    pub fn scaled(self, factor: usize) -> Self {
        Budget {
            simplices: self.simplices.saturating_mul(factor),
            dim: self.dim.saturating_add(factor),
            nodes: self.nodes.saturating_mul(factor as u64),
        }
    }

    pub fn tiny() -> Self {
        Budget { simplices: 64, dim: 4, nodes: 2_000 }
    }

    pub(crate) fn check_dim(&self, what: &str, dim: usize) -> Result<()> {
        if dim > self.dim {
            Err(Error::budget(what, dim))
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_size(&self, what: &str, size: usize, dim: usize) -> Result<()> {
        if size > self.simplices {
            Err(Error::budget(what, dim))
        } else {
            Ok(())
        }
    }
}
