use thiserror::Error;

/// Failure categories surfaced by every fallible operation in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("accuracy error: best estimate {estimate:e} with error bound {bound:e} (requested {tol:e})")]
    Accuracy { estimate: f64, bound: f64, tol: f64 },

    #[error("degenerate basis: non-positive pivot {pivot:e} at collocation index {index}")]
    Degeneracy { index: usize, pivot: f64 },

    #[error("Picard sweeps diverged at sweep {sweep}: coefficient norm grew by a factor {growth:e}")]
    Divergence { sweep: usize, growth: f64 },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("kernel construction failed: {0}")]
    Construction(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Coarse grouping used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Domain,
    Accuracy,
    Degeneracy,
    Divergence,
    Io,
}

impl Category {
    pub fn exit_code(self) -> i32 {
        match self {
            Category::Domain => 2,
            Category::Accuracy => 3,
            Category::Degeneracy => 4,
            Category::Divergence => 5,
            Category::Io => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Category::Domain => "domain",
            Category::Accuracy => "accuracy",
            Category::Degeneracy => "degeneracy",
            Category::Divergence => "divergence",
            Category::Io => "io",
        }
    }
}

impl Error {
    pub fn category(&self) -> Category {
        match self {
            Error::Domain(_) | Error::Contract(_) | Error::Config(_) => Category::Domain,
            Error::Accuracy { .. } => Category::Accuracy,
            Error::Degeneracy { .. } | Error::Construction(_) => Category::Degeneracy,
            Error::Divergence { .. } => Category::Divergence,
            Error::Io(_) => Category::Io,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
