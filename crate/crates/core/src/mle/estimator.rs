use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{probe_state, InverseTemperature, ModelId, ProtocolTime, QubitPrep};
use crate::qmath::golden_section_max;

use super::sampling::OutcomeCounts;

/// Golden-section tolerance in β.
pub const LIKELIHOOD_TOL: f64 = 1e-8;
const SCAN_POINTS: usize = 257;
const FLAT_TOL: f64 = 1e-14;

/// Search bracket `[lo, hi]` for β.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchInterval {
    pub lo: f64,
    pub hi: f64,
}

impl Default for SearchInterval {
    fn default() -> Self {
        Self { lo: 0.05, hi: 50.0 }
    }
}

impl SearchInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo > 0.0 && lo.is_finite()) {
            return Err(Error::domain("beta_lo", lo, "finite beta_lo > 0"));
        }
        if !(hi > lo && hi.is_finite()) {
            return Err(Error::domain("beta_hi", hi, "finite beta_hi > beta_lo"));
        }
        InverseTemperature::new(hi)?;
        Ok(Self { lo, hi })
    }

    fn grid(&self) -> impl Iterator<Item = f64> + '_ {
        let (a, b) = (self.lo.ln(), self.hi.ln());
        (0..SCAN_POINTS).map(move |k| {
            if k + 1 == SCAN_POINTS {
                self.hi
            } else {
                (a + (b - a) * k as f64 / (SCAN_POINTS - 1) as f64).exp()
            }
        })
    }
}

/// Maximum-likelihood estimate of β.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MleEstimate {
    pub beta: f64,
    /// The estimate sits on an interval endpoint.
    pub boundary: bool,
}

fn populations(model: ModelId, beta: f64, prep: QubitPrep, time: ProtocolTime) -> [f64; 2] {
    let b = InverseTemperature::new(beta).expect("search interval validated");
    probe_state(model, b, prep, time).populations()
}

/// `−KL(f‖p)` per measurement; equals the log-likelihood up to a β-independent constant.
fn log_likelihood(f: [f64; 2], p: [f64; 2]) -> f64 {
    let term = |f: f64, p: f64| {
        if f == 0.0 {
            0.0
        } else if p <= 0.0 {
            f64::NEG_INFINITY
        } else {
            -f * (f / p).ln()
        }
    };
    term(f[0], p[0]) + term(f[1], p[1])
}

/// Maximizes `n0·ln p₀(β) + n1·ln(1 − p₀(β))` over `search`.
///
/// The transverse model with `cos θ ≠ 0` and `τ > 0` is inverted in closed
/// form. Other cases use a logarithmic scan followed by golden-section search.
/// Frequencies outside the attainable range return the nearer endpoint.
pub fn mle_beta(
    counts: OutcomeCounts,
    model: ModelId,
    prep: QubitPrep,
    time: ProtocolTime,
    search: SearchInterval,
) -> Result<MleEstimate> {
    let search = SearchInterval::new(search.lo, search.hi)?;
    let m = counts.total() as f64;
    let f = [counts.n0 as f64 / m, counts.n1 as f64 / m];
    let p_lo = populations(model, search.lo, prep, time);
    let p_hi = populations(model, search.hi, prep, time);

    let ct = prep.theta.cos();
    if model == ModelId::Transverse && ct.abs() > 1e-12 && time.value() > 0.0 {
        if (p_lo[0] - p_hi[0]).abs() <= FLAT_TOL {
            return Err(Error::NoInformation {
                lo: search.lo,
                hi: search.hi,
            });
        }
        return Ok(invert_transverse(
            f,
            ct,
            prep.theta,
            time.value(),
            p_lo,
            p_hi,
            search,
        ));
    }

    let grid: Vec<f64> = search.grid().collect();
    let pops: Vec<[f64; 2]> = grid
        .iter()
        .map(|&b| populations(model, b, prep, time))
        .collect();
    let (pmin, pmax) = pops
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| {
            (a.min(p[0]), b.max(p[0]))
        });
    if pmax - pmin <= FLAT_TOL {
        return Err(Error::NoInformation {
            lo: search.lo,
            hi: search.hi,
        });
    }
    let ll: Vec<f64> = pops.iter().map(|&p| log_likelihood(f, p)).collect();
    let mut best = 0;
    for (k, &v) in ll.iter().enumerate() {
        if v > ll[best] {
            best = k;
        }
    }
    let last = grid.len() - 1;
    if f[0] <= pmin || f[0] >= pmax || best == 0 || best == last {
        let beta = if ll[0] > ll[last] {
            search.lo
        } else {
            search.hi
        };
        return Ok(MleEstimate {
            beta,
            boundary: true,
        });
    }
    let g = golden_section_max(
        |b| log_likelihood(f, populations(model, b, prep, time)),
        grid[best - 1],
        grid[best + 1],
        LIKELIHOOD_TOL,
        200,
    );
    let (beta, boundary) = if g.value >= ll[best] {
        (g.x, false)
    } else {
        (grid[best], false)
    };
    Ok(MleEstimate { beta, boundary })
}

fn invert_transverse(
    f: [f64; 2],
    ct: f64,
    theta: f64,
    tau: f64,
    p_lo: [f64; 2],
    p_hi: [f64; 2],
    search: SearchInterval,
) -> MleEstimate {
    let (lo_p, hi_p) = (p_lo[0].min(p_hi[0]), p_lo[0].max(p_hi[0]));
    if f[0] < lo_p || f[0] > hi_p {
        let nearer_lo = (f[0] - p_lo[0]).abs() < (f[0] - p_hi[0]).abs();
        return MleEstimate {
            beta: if nearer_lo { search.lo } else { search.hi },
            boundary: true,
        };
    }
    // f0 − cos²(θ/2) = f0 − 1 + sin²(θ/2) = sin²(θ/2) − f1
    let shift = if ct > 0.0 {
        (0.5 * theta).sin().powi(2) - f[1]
    } else {
        f[0] - (0.5 * theta).cos().powi(2)
    };
    let x = 2.0 * shift / ct;
    let zeta = -(x.ln_1p());
    let c = zeta / (tau * tau);
    let beta = if c > 1.0 {
        (2.0 / (c - 1.0)).ln_1p()
    } else {
        search.hi
    };
    let beta = if beta.is_finite() {
        beta.clamp(search.lo, search.hi)
    } else {
        search.hi
    };
    MleEstimate {
        beta,
        boundary: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimation::{fisher_population, tau_opt_transverse};
    use std::f64::consts::FRAC_PI_2;

    fn counts_at(
        model: ModelId,
        beta: f64,
        prep: QubitPrep,
        time: ProtocolTime,
        m: u64,
    ) -> OutcomeCounts {
        let p0 = populations(model, beta, prep, time)[0];
        let n0 = (p0 * m as f64).round() as u64;
        OutcomeCounts::new(n0, m - n0).unwrap()
    }

    #[test]
    fn noiseless_counts_recover_beta() {
        let m = 1u64 << 50;
        for (model, theta, tau, beta) in [
            (ModelId::Transverse, 0.0, 0.6, 1.0),
            (ModelId::Transverse, 2.5, 0.9, 3.0),
            (ModelId::Dispersive, 0.0, 0.8, 1.0),
            (ModelId::Dispersive, 0.7, 1.3, 2.0),
        ] {
            let prep = QubitPrep::new(theta, 0.3).unwrap();
            let time = ProtocolTime::new(tau).unwrap();
            let c = counts_at(model, beta, prep, time, m);
            let e = mle_beta(c, model, prep, time, SearchInterval::default()).unwrap();
            assert!(!e.boundary);
            assert!(
                (e.beta - beta).abs() < 1e-6,
                "{model} {theta} {tau}: {}",
                e.beta
            );
        }
    }

    #[test]
    fn scan_route_agrees_with_inversion() {
        let prep = QubitPrep::ground();
        let time = ProtocolTime::new(0.6).unwrap();
        let c = OutcomeCounts::new(61_234, 38_766).unwrap();
        let inv = mle_beta(
            c,
            ModelId::Transverse,
            prep,
            time,
            SearchInterval::default(),
        )
        .unwrap();
        let f = [0.61234, 0.38766];
        let g = golden_section_max(
            |b| log_likelihood(f, populations(ModelId::Transverse, b, prep, time)),
            0.05,
            50.0,
            1e-10,
            400,
        );
        assert!((inv.beta - g.x).abs() < 1e-6, "{} vs {}", inv.beta, g.x);
    }

    #[test]
    fn typical_transverse_estimate() {
        let beta = InverseTemperature::new(1.0).unwrap();
        let time = tau_opt_transverse(beta);
        let prep = QubitPrep::ground();
        let m = 100_000u64;
        let f = fisher_population(ModelId::Transverse, beta, prep, time);
        let sd = (1.0 / (m as f64 * f)).sqrt();
        let c =
            super::super::sample_population_outcomes(ModelId::Transverse, beta, prep, time, m, 42)
                .unwrap();
        let e = mle_beta(
            c,
            ModelId::Transverse,
            prep,
            time,
            SearchInterval::default(),
        )
        .unwrap();
        assert!((e.beta - 1.0).abs() < 5.0 * sd, "{} (sd {sd})", e.beta);
    }

    #[test]
    fn all_ground_is_boundary() {
        let time = ProtocolTime::new(0.6).unwrap();
        let c = OutcomeCounts::new(1000, 0).unwrap();
        let s = SearchInterval::default();
        let e = mle_beta(c, ModelId::Transverse, QubitPrep::ground(), time, s).unwrap();
        assert!(e.boundary);
        assert_eq!(e.beta, s.hi);
        let e = mle_beta(c, ModelId::Dispersive, QubitPrep::ground(), time, s).unwrap();
        assert!(e.boundary);
    }

    #[test]
    fn flat_likelihood() {
        let time = ProtocolTime::new(0.6).unwrap();
        let c = OutcomeCounts::new(500, 500).unwrap();
        let prep = QubitPrep::new(FRAC_PI_2, 0.0).unwrap();
        for model in ModelId::ALL {
            assert!(matches!(
                mle_beta(c, model, prep, time, SearchInterval::default()),
                Err(Error::NoInformation { .. })
            ));
        }
        let t0 = ProtocolTime::new(0.0).unwrap();
        assert!(mle_beta(
            c,
            ModelId::Transverse,
            QubitPrep::ground(),
            t0,
            SearchInterval::default()
        )
        .is_err());
    }

    #[test]
    fn bad_interval() {
        assert!(SearchInterval::new(0.0, 1.0).is_err());
        assert!(SearchInterval::new(2.0, 1.0).is_err());
        assert!(SearchInterval::new(1.0, f64::INFINITY).is_err());
    }
}
