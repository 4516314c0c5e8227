//! Thermometry of a bosonic mode with a single probe qubit: probe states,
//! Fisher information, optimal protocols and Monte Carlo estimation.

pub mod error;
pub mod estimation;
pub mod mle;
pub mod models;
pub mod oracle;
pub mod qmath;

pub use error::{Error, Result};
pub use models::{InverseTemperature, ModelId, ProtocolTime, QubitPrep};

/// Library version string.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
