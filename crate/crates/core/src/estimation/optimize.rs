use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{probe, InverseTemperature, ModelId, ProtocolTime, QubitPrep};
use crate::qmath::{golden_section_max, Complex2x2};

use super::closed_form::tau_opt_transverse;
use super::fisher::fisher_population;
use super::qfi::qfi_from_probe;
use super::sld::sld_from_probe;

pub const THETA_POINTS: usize = 33;
pub const PHI_POINTS: usize = 33;
pub const TAU_POINTS: usize = 257;
pub const GOLDEN_MAX_ITER: usize = 60;
const GOLDEN_TOL: f64 = 1e-12;
const MAX_ROUNDS: usize = 20;

/// A maximizing protocol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    pub prep: QubitPrep,
    pub tau: f64,
    pub value: f64,
}

/// Optimal protocol for one model and temperature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimationReport {
    pub model: ModelId,
    pub beta: f64,
    /// Population Fisher information at its optimum.
    pub fisher_population: f64,
    /// QFI at the same protocol.
    pub qfi: f64,
    /// SLD at the same protocol.
    pub sld: Complex2x2,
    /// Closed-form optimal time, where one exists.
    pub tau_opt: Option<f64>,
    pub prep_used: QubitPrep,
    pub tau_used: f64,
    /// Protocol maximizing the QFI.
    pub qfi_optimum: Optimum,
}

#[derive(Clone, Copy)]
enum Objective {
    Fisher,
    Qfi,
}

fn evaluate(model: ModelId, beta: InverseTemperature, objective: Objective, x: [f64; 3]) -> f64 {
    let (Ok(prep), Ok(time)) = (
        QubitPrep::wrapped(x[0].clamp(0.0, PI), x[1]),
        ProtocolTime::new(x[2].max(0.0)),
    ) else {
        return f64::NAN;
    };
    match objective {
        Objective::Fisher => fisher_population(model, beta, prep, time),
        Objective::Qfi => qfi_from_probe(&probe(model, beta, prep, time)).unwrap_or(f64::NAN),
    }
}

/// Larger value wins; NaN loses; ties go to the lower index.
fn better(a: (f64, usize), b: (f64, usize)) -> Ordering {
    match (a.0.is_nan(), b.0.is_nan()) {
        (true, true) => b.1.cmp(&a.1),
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => a.0.partial_cmp(&b.0).unwrap().then(b.1.cmp(&a.1)),
    }
}

fn lattice_point(idx: usize, tau_max: f64) -> [f64; 3] {
    let k = idx % TAU_POINTS;
    let j = (idx / TAU_POINTS) % PHI_POINTS;
    let i = idx / (TAU_POINTS * PHI_POINTS);
    [
        PI * i as f64 / (THETA_POINTS - 1) as f64,
        TAU * j as f64 / PHI_POINTS as f64,
        tau_max * k as f64 / (TAU_POINTS - 1) as f64,
    ]
}

fn refine(
    model: ModelId,
    beta: InverseTemperature,
    objective: Objective,
    mut x: [f64; 3],
    steps: [f64; 3],
    bounds: [(f64, f64); 3],
) -> ([f64; 3], f64) {
    let mut best = evaluate(model, beta, objective, x);
    for _ in 0..MAX_ROUNDS {
        let before = best;
        for c in 0..3 {
            if steps[c] == 0.0 {
                continue;
            }
            let lo = (x[c] - steps[c]).max(bounds[c].0);
            let hi = (x[c] + steps[c]).min(bounds[c].1);
            let mut trial = x;
            let m = golden_section_max(
                |v| {
                    trial[c] = v;
                    evaluate(model, beta, objective, trial)
                },
                lo,
                hi,
                GOLDEN_TOL,
                GOLDEN_MAX_ITER,
            );
            if m.value > best {
                best = m.value;
                x[c] = m.x;
            }
        }
        if !(best > before * (1.0 + 1e-15)) {
            break;
        }
    }
    (x, best)
}

fn optimum_from(x: [f64; 3], value: f64) -> Optimum {
    Optimum {
        prep: QubitPrep::wrapped(x[0].clamp(0.0, PI), x[1]).expect("clamped angles"),
        tau: x[2],
        value,
    }
}

fn search(model: ModelId, beta: InverseTemperature, tau_max: f64, objective: Objective) -> Optimum {
    let n = THETA_POINTS * PHI_POINTS * TAU_POINTS;
    let (_, idx) = (0..n)
        .into_par_iter()
        .map(|idx| {
            (
                evaluate(model, beta, objective, lattice_point(idx, tau_max)),
                idx,
            )
        })
        .reduce(
            || (f64::NAN, usize::MAX),
            |a, b| if better(a, b) == Ordering::Less { b } else { a },
        );
    let steps = [
        PI / (THETA_POINTS - 1) as f64,
        TAU / PHI_POINTS as f64,
        tau_max / (TAU_POINTS - 1) as f64,
    ];
    let bounds = [
        (0.0, PI),
        (f64::NEG_INFINITY, f64::INFINITY),
        (0.0, tau_max),
    ];
    let (x, value) = refine(
        model,
        beta,
        objective,
        lattice_point(idx, tau_max),
        steps,
        bounds,
    );
    optimum_from(x, value)
}

/// Maximizes the population Fisher information and the QFI over `(θ, φ, τ)`
/// with `τ ∈ [0, tau_max]`: a 33×33×257 lattice followed by coordinate-wise
/// golden-section refinement.
pub fn optimize_protocol(
    model: ModelId,
    beta: InverseTemperature,
    tau_max: f64,
) -> Result<EstimationReport> {
    if !(tau_max > 0.0 && tau_max.is_finite()) {
        return Err(Error::domain("tau_max", tau_max, "finite tau_max > 0"));
    }
    let f_opt = search(model, beta, tau_max, Objective::Fisher);
    let qfi_optimum = search(model, beta, tau_max, Objective::Qfi);
    let time = ProtocolTime::new(f_opt.tau)?;
    let state = probe(model, beta, f_opt.prep, time);
    Ok(EstimationReport {
        model,
        beta: beta.value(),
        fisher_population: f_opt.value,
        qfi: qfi_from_probe(&state)?,
        sld: sld_from_probe(&state).operator,
        tau_opt: match model {
            ModelId::Transverse => Some(tau_opt_transverse(beta).value()),
            ModelId::Dispersive => None,
        },
        prep_used: f_opt.prep,
        tau_used: f_opt.tau,
        qfi_optimum,
    })
}

/// Time in `[0, tau_max]` maximizing the population Fisher information for a
/// fixed preparation.
pub fn optimize_time(
    model: ModelId,
    beta: InverseTemperature,
    prep: QubitPrep,
    tau_max: f64,
) -> Result<Optimum> {
    if !(tau_max > 0.0 && tau_max.is_finite()) {
        return Err(Error::domain("tau_max", tau_max, "finite tau_max > 0"));
    }
    let x0 = [prep.theta, prep.phi, 0.0];
    let (_, k) = (0..TAU_POINTS)
        .into_par_iter()
        .map(|k| {
            let mut x = x0;
            x[2] = tau_max * k as f64 / (TAU_POINTS - 1) as f64;
            (evaluate(model, beta, Objective::Fisher, x), k)
        })
        .reduce(
            || (f64::NAN, usize::MAX),
            |a, b| if better(a, b) == Ordering::Less { b } else { a },
        );
    let mut x = x0;
    x[2] = tau_max * k as f64 / (TAU_POINTS - 1) as f64;
    let step = tau_max / (TAU_POINTS - 1) as f64;
    let (x, value) = refine(
        model,
        beta,
        Objective::Fisher,
        x,
        [0.0, 0.0, step],
        [(0.0, PI), (0.0, TAU), (0.0, tau_max)],
    );
    Ok(Optimum {
        prep,
        tau: x[2],
        value,
    })
}
