use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimation::{fisher_population, qfi};
use crate::models::{InverseTemperature, ModelId, ProtocolTime, QubitPrep};

use super::estimator::{mle_beta, MleEstimate, SearchInterval};
use super::sampling::{replicate_seed, sample_population_outcomes};

pub const MIN_REPLICATES: usize = 100;

/// Monte Carlo estimator statistics against the classical and quantum bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrlbReport {
    pub beta_true: f64,
    pub beta_hat_mean: f64,
    /// Sample variance (n − 1 denominator) over interior estimates.
    pub empirical_variance: f64,
    /// `1/(M·F)`
    pub crlb: f64,
    /// `1/(M·H)`
    pub qcrlb: f64,
    /// `empirical_variance / crlb`
    pub ratio: f64,
    pub replicates: usize,
    /// Boundary estimates left out of the statistics.
    pub excluded: usize,
    pub measurements: u64,
    pub fisher: f64,
    pub qfi: f64,
}

/// Repeats sampling and ML estimation `replicates` times.
///
/// Replicate `i` uses the seed `seed ^ i·0x9E3779B97F4A7C15`.
pub fn crlb_experiment(
    model: ModelId,
    beta_true: InverseTemperature,
    prep: QubitPrep,
    time: ProtocolTime,
    measurements: u64,
    replicates: usize,
    seed: u64,
) -> Result<CrlbReport> {
    if replicates < MIN_REPLICATES {
        return Err(Error::domain(
            "replicates",
            replicates as f64,
            "replicates >= 100",
        ));
    }
    if measurements == 0 {
        return Err(Error::domain("M", 0.0, "M >= 1"));
    }
    let fisher = fisher_population(model, beta_true, prep, time);
    if !(fisher > 0.0) {
        return Err(Error::NoInformation {
            lo: beta_true.value(),
            hi: beta_true.value(),
        });
    }
    let h = qfi(model, beta_true, prep, time)?;
    let search = SearchInterval::default();

    let estimates: Vec<MleEstimate> = (0..replicates as u64)
        .into_par_iter()
        .map(|i| {
            let counts = sample_population_outcomes(
                model,
                beta_true,
                prep,
                time,
                measurements,
                replicate_seed(seed, i),
            )?;
            mle_beta(counts, model, prep, time, search)
        })
        .collect::<Result<_>>()?;

    let interior: Vec<f64> = estimates
        .iter()
        .filter(|e| !e.boundary)
        .map(|e| e.beta)
        .collect();
    if interior.len() < 2 {
        return Err(Error::Config(format!(
            "only {} of {replicates} estimates are interior",
            interior.len()
        )));
    }
    let n = interior.len() as f64;
    let mean = interior.iter().sum::<f64>() / n;
    let var = interior.iter().map(|b| (b - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let m = measurements as f64;
    let crlb = 1.0 / (m * fisher);
    Ok(CrlbReport {
        beta_true: beta_true.value(),
        beta_hat_mean: mean,
        empirical_variance: var,
        crlb,
        qcrlb: 1.0 / (m * h),
        ratio: var / crlb,
        replicates,
        excluded: replicates - interior.len(),
        measurements,
        fisher,
        qfi: h,
    })
}
