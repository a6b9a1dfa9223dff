use std::path::PathBuf;

use thiserror::Error;

pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_CANT_CREATE: i32 = 74;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] esqpt::Error),
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Output { .. } => EXIT_CANT_CREATE,
            CliError::Core(e) => match e {
                esqpt::Error::Domain(_) | esqpt::Error::Unsupported(_) => EXIT_DOMAIN,
                _ => EXIT_NUMERICAL,
            },
        }
    }
}
