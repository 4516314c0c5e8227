use thiserror::Error;

/// Exit status for validation or assertion failures.
pub const EXIT_VALIDATION: u8 = 1;
/// Exit status for usage and domain errors.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] qtherm::Error),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use qtherm::Error as E;
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Core(E::QfiInconsistent { .. } | E::NotHermitian(_) | E::InvalidState(_)) => {
                EXIT_VALIDATION
            }
            _ => EXIT_USAGE,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
