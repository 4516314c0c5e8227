use std::fmt::Write as _;

use qtherm::estimation::{
    fisher_population, qfi, qfi_bloch, qfi_from_probe, sld_from_probe, sld_residuals,
};
use qtherm::models::{
    decoherence_exponent, probe, probe_state_dispersive, probe_state_transverse,
    transverse_state_for_zeta,
};
use qtherm::oracle::{
    default_step, dispersive_limit_scan, fisher_population_numeric, probe_state_dispersive_focksum,
    probe_state_transverse_quadrature, qfi_numeric, quadrature_subgrid, standard_grid,
    FockTruncation, GridPoint, DEFAULT_QUADRATURE_ORDER,
};
use qtherm::{InverseTemperature, ModelId, QubitPrep};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::Profile;
use crate::output::version_line;

/// Coupling used for the dispersive-limit scan.
pub const SCAN_LAMBDA: f64 = 0.05;
/// `Δ/λ` values of the scan.
pub const SCAN_RATIOS: [f64; 4] = [5.0, 10.0, 20.0, 40.0];
/// `λ²t/Δ` held fixed along the scan.
pub const SCAN_TAU: f64 = 0.6;
/// Temperatures of the scan.
pub const SCAN_BETAS: [f64; 2] = [1.0, 3.0];
/// Relative QFI gap allowed at the largest detuning.
pub const SCAN_GAP_TOL: f64 = 0.02;

/// Grid coordinates of a check's worst point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Location {
    pub model: Option<ModelId>,
    pub beta: f64,
    pub theta: f64,
    pub phi: f64,
    pub tau: f64,
}

impl Location {
    fn new(model: Option<ModelId>, p: &GridPoint) -> Self {
        Self {
            model,
            beta: p.beta.value(),
            theta: p.prep.theta,
            phi: p.prep.phi,
            tau: p.time.value(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub description: &'static str,
    pub tolerance: f64,
    pub worst: f64,
    pub worst_at: Option<Location>,
    pub points: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub version: String,
    pub profile: &'static str,
    pub grid_points: usize,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// One line per check.
    pub fn table(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = write!(
                s,
                "{:<4} {:<28} worst {:>11.3e}  tol {:>8.1e}  points {:>6}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.worst,
                c.tolerance,
                c.points
            );
            if let (false, Some(l)) = (c.passed, c.worst_at) {
                let model = l.model.map_or(String::new(), |m| format!("{m} "));
                let _ = write!(
                    s,
                    "  at {model}beta={} theta={} phi={} tau={}",
                    l.beta, l.theta, l.phi, l.tau
                );
            }
            s.push('\n');
        }
        s
    }
}

/// Largest value of `f` (NaN counts as infinite), with its first location.
fn worst_over<F>(
    points: &[GridPoint],
    model: Option<ModelId>,
    f: F,
) -> (f64, Option<Location>, usize)
where
    F: Fn(&GridPoint) -> Option<f64> + Sync,
{
    let (worst, at, n) = points
        .par_iter()
        .enumerate()
        .filter_map(|(i, p)| f(p).map(|v| (if v.is_nan() { f64::INFINITY } else { v }, i, 1usize)))
        .reduce(
            || (f64::NEG_INFINITY, usize::MAX, 0),
            |a, b| {
                let n = a.2 + b.2;
                let pick = if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                };
                (pick.0, pick.1, n)
            },
        );
    if n == 0 {
        return (0.0, None, 0);
    }
    (worst, Some(Location::new(model, &points[at])), n)
}

fn check(
    name: &'static str,
    description: &'static str,
    tolerance: f64,
    parts: Vec<(f64, Option<Location>, usize)>,
) -> CheckResult {
    let points = parts.iter().map(|p| p.2).sum();
    let (worst, worst_at, _) =
        parts
            .into_iter()
            .fold((0.0, None, 0), |a, b| if b.0 > a.0 { b } else { a });
    CheckResult {
        name,
        description,
        tolerance,
        worst,
        worst_at,
        points,
        passed: worst <= tolerance,
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn per_model<F>(points: &[GridPoint], f: F) -> Vec<(f64, Option<Location>, usize)>
where
    F: Fn(ModelId, &GridPoint) -> Option<f64> + Sync,
{
    ModelId::ALL
        .iter()
        .map(|&m| worst_over(points, Some(m), |p| f(m, p)))
        .collect()
}

/// Runs every oracle comparison.
///
/// `zeta_scale ≠ 1` corrupts the analytic transverse state (a sensitivity canary).
pub fn run_validate(profile: Profile, zeta_scale: f64) -> ValidationReport {
    let grid = standard_grid(profile.stride());
    let quad = quadrature_subgrid(&grid);
    let mut checks = Vec::new();

    let transverse_state = |p: &GridPoint| {
        if zeta_scale == 1.0 {
            probe_state_transverse(p.beta, p.prep, p.time)
        } else {
            transverse_state_for_zeta(p.prep, zeta_scale * decoherence_exponent(p.beta, p.time))
        }
    };
    checks.push(check(
        "transverse_state_quadrature",
        "trace distance between the analytic transverse state and 128-node Gauss-Hermite averaging",
        1e-10,
        vec![worst_over(&quad, Some(ModelId::Transverse), |p| {
            let q = probe_state_transverse_quadrature(
                p.beta,
                p.prep,
                p.time,
                0.0,
                DEFAULT_QUADRATURE_ORDER,
            )
            .ok()?;
            Some(transverse_state(p).trace_distance(&q))
        })],
    ));
    checks.push(check(
        "dispersive_state_focksum",
        "trace distance between the analytic dispersive state and the Fock sum with tail <= 1e-15",
        1e-12,
        vec![worst_over(&grid, Some(ModelId::Dispersive), |p| {
            let trunc = FockTruncation::for_tail(p.beta, 1e-15).ok()?;
            let s = probe_state_dispersive_focksum(p.beta, p.prep, p.time, trunc).ok()?;
            Some(probe_state_dispersive(p.beta, p.prep, p.time).trace_distance(&s))
        })],
    ));
    checks.push(check(
        "qfi_routes",
        "relative difference between eigen-decomposition and Bloch-vector QFI",
        1e-8,
        per_model(&grid, |m, p| {
            let s = probe(m, p.beta, p.prep, p.time);
            let b = qfi_bloch(s.bloch, s.d_bloch, s.defect);
            match qfi_from_probe(&s) {
                Ok(h) if h > 1e-12 => Some(rel(h, b)),
                Ok(_) => Some(0.0),
                Err(_) => Some(f64::INFINITY),
            }
        }),
    ));
    checks.push(check(
        "qfi_numeric",
        "relative difference between analytic QFI and the finite-difference oracle where QFI > 1e-12",
        1e-6,
        per_model(&grid, |m, p| {
            let h = qfi(m, p.beta, p.prep, p.time).unwrap_or(f64::NAN);
            if h <= 1e-12 {
                return None;
            }
            let n = qfi_numeric(m, p.beta, p.prep, p.time, default_step(p.beta)).unwrap_or(f64::NAN);
            Some(rel(n, h))
        }),
    ));
    checks.push(check(
        "fisher_numeric",
        "relative difference between analytic population FI and the finite-difference oracle where FI > 1e-12",
        1e-6,
        per_model(&grid, |m, p| {
            let f = fisher_population(m, p.beta, p.prep, p.time);
            if f <= 1e-12 {
                return None;
            }
            let n = fisher_population_numeric(m, p.beta, p.prep, p.time, default_step(p.beta)).unwrap_or(f64::NAN);
            Some(rel(n, f))
        }),
    ));
    checks.push(check(
        "fisher_below_qfi",
        "population FI minus QFI",
        1e-9,
        per_model(&grid, |m, p| {
            let h = qfi(m, p.beta, p.prep, p.time).unwrap_or(f64::NAN);
            Some((fisher_population(m, p.beta, p.prep, p.time) - h).max(0.0))
        }),
    ));
    let sld_parts = |which: usize| {
        per_model(&grid, move |m, p| {
            let s = probe(m, p.beta, p.prep, p.time);
            let l = sld_from_probe(&s);
            let r = sld_residuals(&s.rho, &s.d_rho(), &l.operator);
            match which {
                0 => Some(r.lyapunov),
                1 => Some(r.mean),
                _ => {
                    let h = qfi_from_probe(&s).unwrap_or(f64::NAN);
                    (h > 1e-12 || h.is_nan()).then(|| rel(r.second_moment, h))
                }
            }
        })
    };
    checks.push(check(
        "sld_lyapunov",
        "max-norm residual of d(rho) = (L rho + rho L)/2",
        1e-10,
        sld_parts(0),
    ));
    checks.push(check("sld_mean", "|Tr[rho L]|", 1e-10, sld_parts(1)));
    checks.push(check(
        "sld_second_moment",
        "relative difference between Tr[rho L^2] and QFI where QFI > 1e-12",
        1e-8,
        sld_parts(2),
    ));
    checks.push(dispersive_limit_check());

    let passed = checks.iter().all(|c| c.passed);
    ValidationReport {
        version: version_line(),
        profile: profile.name(),
        grid_points: grid.len(),
        passed,
        checks,
    }
}

/// Final relative QFI gap of the Δ-scan; fails if the winning effective
/// coupling differs between temperatures.
fn dispersive_limit_check() -> CheckResult {
    let mut worst = 0.0f64;
    let mut worst_at = None;
    let mut winners = Vec::new();
    for beta in SCAN_BETAS {
        let b = InverseTemperature::new(beta).expect("scan temperature");
        match dispersive_limit_scan(b, QubitPrep::ground(), SCAN_LAMBDA, &SCAN_RATIOS, SCAN_TAU) {
            Ok(scan) => {
                winners.push(scan.winner);
                let g = scan.final_gap();
                if !(g <= worst) {
                    worst = if g.is_nan() { f64::INFINITY } else { g };
                    worst_at = Some(Location {
                        model: Some(ModelId::Dispersive),
                        beta,
                        theta: 0.0,
                        phi: 0.0,
                        tau: SCAN_TAU,
                    });
                }
            }
            Err(_) => worst = f64::INFINITY,
        }
    }
    let stable = winners.windows(2).all(|w| w[0] == w[1]);
    CheckResult {
        name: "dispersive_limit",
        description: "relative QFI gap between exact Jaynes-Cummings evolution and the dispersive model at the largest detuning",
        tolerance: SCAN_GAP_TOL,
        worst,
        worst_at,
        points: SCAN_BETAS.len() * SCAN_RATIOS.len(),
        passed: worst <= SCAN_GAP_TOL && stable,
    }
}
