use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building inputs or evaluating the model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value:e} is outside the valid interval [{min:e}, {max:e}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("model domain error: {0}")]
    Domain(String),

    #[error("calibration error: {0}")]
    Calibration(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown {kind} '{name}' (valid: {valid})")]
    UnknownName {
        kind: &'static str,
        name: String,
        valid: String,
    },

    #[error("{source_name}:{line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// True for failures of the physics model itself, as opposed to bad input.
    pub fn is_model_domain(&self) -> bool {
        matches!(
            self,
            Error::OutOfRange { .. } | Error::Degenerate(_) | Error::Domain(_) | Error::Calibration(_)
        )
    }

    pub(crate) fn io(path: impl std::fmt::Display, err: std::io::Error) -> Self {
        Error::Io {
            path: path.to_string(),
            message: err.to_string(),
        }
    }

    pub(crate) fn parse(source_name: &str, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            source_name: source_name.to_string(),
            line,
            message: message.into(),
        }
    }
}
