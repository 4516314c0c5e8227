use thiserror::Error;

/// Errors raised by the thermometry library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside its domain ({expected})")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not a density matrix: {0}")]
    InvalidState(String),

    #[error("effects do not form a POVM: {0}")]
    InvalidPovm(String),

    #[error("quantum Fisher information routes disagree: eigen-formula {eigen:e} vs Bloch form {bloch:e}")]
    QfiInconsistent { eigen: f64, bloch: f64 },

    #[error("Fisher-information deficit undefined: optimal QFI is {0:e}")]
    UndefinedDeficit(f64),

    #[error("likelihood is flat on [{lo}, {hi}]: the measurement carries no information on beta")]
    NoInformation { lo: f64, hi: f64 },

    #[error("Fock truncation at {dim} levels is too small: {weight:e} thermal weight in the top two levels")]
    TruncationTooSmall { dim: usize, weight: f64 },

    #[error("invalid sweep or experiment configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            expected,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
