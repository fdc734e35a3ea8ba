use thiserror::Error;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
    #[error("invalid sweep specification: {0}")]
    InvalidSpec(String),
    #[error("config {path}:{line}: {msg}")]
    Config {
        path: String,
        line: usize,
        msg: String,
    },
    #[error(transparent)]
    Model(#[from] vqutrit::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, SweepError>;
