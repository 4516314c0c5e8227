//! Simulated population measurements and maximum-likelihood estimation of β.

mod estimator;
mod experiment;
mod sampling;

pub use estimator::{mle_beta, MleEstimate, SearchInterval, LIKELIHOOD_TOL};
pub use experiment::{crlb_experiment, CrlbReport, MIN_REPLICATES};
pub use sampling::{replicate_seed, sample_population_outcomes, OutcomeCounts, STREAM_INCREMENT};
