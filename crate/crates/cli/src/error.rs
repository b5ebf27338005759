use std::fmt;
use std::io;
use std::path::PathBuf;

/// Where a configuration value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    /// 1-based line of a config document.
    Line(usize),
    /// A `--key value` command-line flag.
    Flag,
    /// The built-in default.
    Default,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Line(n) => write!(f, "line {n}"),
            Origin::Flag => f.write_str("command line"),
            Origin::Default => f.write_str("default"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{origin}: `{key}`: {message}")]
pub struct ConfigError {
    pub key: String,
    pub origin: Origin,
    pub message: String,
}

impl ConfigError {
    pub fn new(key: impl Into<String>, origin: Origin, message: impl Into<String>) -> Self {
        Self {
            key: key.into(),
            origin,
            message: message.into(),
        }
    }
}

/// A model failure at one time sample.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("at tau = {tau}{}: {source}", label_suffix(.label))]
pub struct RunError {
    pub tau: f64,
    pub label: Option<String>,
    #[source]
    pub source: jcm_core::Error,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("oracle integration failed{}: {source}", label_suffix(.label))]
    Oracle {
        label: Option<String>,
        #[source]
        source: jcm_core::Error,
    },
    #[error(
        "analytic state deviates from the oracle by {deviation:e} at tau = {tau}{} (limit {limit:e})",
        label_suffix(.label)
    )]
    Deviation {
        label: Option<String>,
        tau: f64,
        deviation: f64,
        limit: f64,
    },
}

fn label_suffix(label: &Option<String>) -> String {
    match label {
        Some(l) => format!(" [{l}]"),
        None => String::new(),
    }
}

/// Top-level failure of a `jcm` invocation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Run(#[from] RunError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
