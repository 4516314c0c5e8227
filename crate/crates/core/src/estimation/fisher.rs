use crate::models::{probe, InverseTemperature, ModelId, ProbeState, ProtocolTime, QubitPrep};

use super::povm::{expectation, Povm2};

/// Outcomes with `p_j` below this are treated as impossible.
pub const ZERO_PROBABILITY: f64 = 1e-300;
/// Derivative magnitude below which an impossible outcome contributes 0.
pub const ZERO_DERIVATIVE: f64 = 1e-12;

/// `Σ_j (∂p_j)²/p_j`.
///
/// An outcome with `p_j ≤ 1e−300` contributes 0 if `|∂p_j| < 1e−12` and makes
/// the result `+∞` otherwise.
pub fn fisher_from_parts(p: &[f64], dp: &[f64]) -> f64 {
    p.iter()
        .zip(dp)
        .map(|(&p, &d)| {
            if p > ZERO_PROBABILITY {
                d * d / p
            } else if d.abs() < ZERO_DERIVATIVE {
                0.0
            } else {
                f64::INFINITY
            }
        })
        .sum()
}

/// Fisher information of `povm` on a probe state with analytic `∂_β p_j = Tr[∂_βρ Π_j]`.
pub fn fisher_from_probe(probe: &ProbeState, povm: &Povm2) -> f64 {
    let d_rho = probe.d_rho();
    let (p, dp): (Vec<f64>, Vec<f64>) = povm
        .effects()
        .iter()
        .map(|e| (expectation(e, probe.rho.matrix()), expectation(e, &d_rho)))
        .unzip();
    fisher_from_parts(&p, &dp)
}

/// Classical Fisher information of β for the measurement `povm`.
pub fn fisher_information(
    model: ModelId,
    beta: InverseTemperature,
    prep: QubitPrep,
    time: ProtocolTime,
    povm: &Povm2,
) -> f64 {
    fisher_from_probe(&probe(model, beta, prep, time), povm)
}

/// Fisher information of the population measurement.
pub fn fisher_population(
    model: ModelId,
    beta: InverseTemperature,
    prep: QubitPrep,
    time: ProtocolTime,
) -> f64 {
    let s = probe(model, beta, prep, time);
    let p = s.rho.populations();
    let d = 0.5 * s.d_bloch[2];
    fisher_from_parts(&p, &[d, -d])
}
