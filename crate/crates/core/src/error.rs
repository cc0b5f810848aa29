use std::path::PathBuf;

/// Errors produced anywhere in the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("argument {x} outside the validated range [{lo}, {hi}] of {what}")]
    OutOfRange {
        what: &'static str,
        x: f64,
        lo: f64,
        hi: f64,
    },

    #[error("label {0} is not present in the particle system")]
    UnknownLabel(i64),

    #[error("label {0} was not tracked in this trajectory")]
    UntrackedLabel(i64),

    #[error("site {0} is not monitored in this trajectory")]
    UnmonitoredSite(i64),

    #[error("illegal jump at site {0}: the height profile is not a valley there")]
    IllegalJump(i64),

    #[error("cost guard exceeded: {0}")]
    CostGuard(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("did not converge: {what} (achieved error {achieved:e})")]
    NonConvergence { what: String, achieved: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(msg()))
    }
}
