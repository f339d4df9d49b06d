use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite `{0}` (try --list-suites)")]
    UnknownSuite(String),
    #[error("invalid config: {path}: {message}")]
    Config { path: String, message: String },
    #[error("cannot parse config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{case}: {source}")]
    Numeric {
        case: String,
        #[source]
        source: gps_core::Error,
    },
}

impl VerifyError {
    pub(crate) fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        VerifyError::Config { path: path.into(), message: message.into() }
    }

    pub(crate) fn numeric(case: impl Into<String>) -> impl Fn(gps_core::Error) -> Self {
        let case = case.into();
        move |source| VerifyError::Numeric { case: case.clone(), source }
    }
}

pub type Result<T> = std::result::Result<T, VerifyError>;
