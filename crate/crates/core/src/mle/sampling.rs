use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{probe_state, InverseTemperature, ModelId, ProtocolTime, QubitPrep};

/// Stream-splitting constant: replicate `i` is seeded with `seed ^ i·STREAM_INCREMENT`.
pub const STREAM_INCREMENT: u64 = 0x9E37_79B9_7F4A_7C15;

/// Record of `M = n0 + n1` population measurements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OutcomeCounts {
    pub n0: u64,
    pub n1: u64,
}

impl OutcomeCounts {
    pub fn new(n0: u64, n1: u64) -> Result<Self> {
        match n0.checked_add(n1) {
            Some(m) if m >= 1 => Ok(Self { n0, n1 }),
            _ => Err(Error::Config(format!(
                "invalid outcome counts n0={n0}, n1={n1}"
            ))),
        }
    }

    pub fn total(&self) -> u64 {
        self.n0 + self.n1
    }

    /// Empirical frequencies `(n0/M, n1/M)`.
    pub fn frequencies(&self) -> (f64, f64) {
        let m = self.total() as f64;
        (self.n0 as f64 / m, self.n1 as f64 / m)
    }
}

/// Seed of replicate `i`.
pub fn replicate_seed(seed: u64, i: u64) -> u64 {
    seed ^ i.wrapping_mul(STREAM_INCREMENT)
}

/// Draws `n0 ~ Binomial(M, p₀)` for the population measurement.
///
/// The generator is `ChaCha8Rng::seed_from_u64(seed)`.
pub fn sample_population_outcomes(
    model: ModelId,
    beta: InverseTemperature,
    prep: QubitPrep,
    time: ProtocolTime,
    measurements: u64,
    seed: u64,
) -> Result<OutcomeCounts> {
    if measurements == 0 {
        return Err(Error::domain("M", 0.0, "M >= 1"));
    }
    let [p0, _] = probe_state(model, beta, prep, time).populations();
    let p0 = p0.clamp(0.0, 1.0);
    let dist = Binomial::new(measurements, p0).map_err(|e| Error::Config(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n0 = dist.sample(&mut rng);
    OutcomeCounts::new(n0, measurements - n0)
}
