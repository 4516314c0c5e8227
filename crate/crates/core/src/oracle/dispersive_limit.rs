use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimation::qfi;
use crate::models::{InverseTemperature, ModelId, ProtocolTime, QubitPrep};

use super::focksum::FockTruncation;
use super::full_jc::{full_jc_probe_state, FullJcParams};
use super::numeric::{default_step, qfi_numeric_with};

/// Candidate effective couplings `g_eff = c·λ²/Δ`.
pub const G_EFF_CANDIDATES: [f64; 2] = [1.0, 2.0];

/// One detuning of a dispersive-limit scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaScanPoint {
    /// `Δ/λ`
    pub ratio: f64,
    /// Whether `Δ²/4 > 100·λ²(n̄ + 1)`.
    pub dispersive_regime: bool,
    /// Finite-difference QFI of the exact Jaynes–Cummings probe.
    pub qfi_full: f64,
    /// Dispersive-model QFI at `τ = c·λ²t/Δ` for each candidate `c`.
    pub qfi_dispersive: [f64; 2],
    /// Relative gaps `|H_full − H_disp|/H_disp` per candidate.
    pub gaps: [f64; 2],
}

/// QFI comparison between exact Jaynes–Cummings evolution and the dispersive
/// model along a sequence of detunings at fixed `λ²t/Δ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaScan {
    pub beta: f64,
    pub tau: f64,
    pub lambda_coupling: f64,
    pub points: Vec<DeltaScanPoint>,
    /// Index into [`G_EFF_CANDIDATES`] with the smaller gap at the largest detuning.
    pub winner: usize,
}

impl DeltaScan {
    pub fn winner_coupling(&self) -> f64 {
        G_EFF_CANDIDATES[self.winner]
    }

    pub fn winner_gaps(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.gaps[self.winner]).collect()
    }

    pub fn final_gap(&self) -> f64 {
        self.points.last().map_or(f64::NAN, |p| p.gaps[self.winner])
    }

    /// Gaps of the winning candidate strictly decrease with detuning.
    pub fn is_monotone(&self) -> bool {
        self.winner_gaps().windows(2).all(|w| w[1] < w[0])
    }
}

/// Runs the scan over `Δ = ratio·λ` with `t = τΔ/λ²`.
pub fn dispersive_limit_scan(
    beta: InverseTemperature,
    prep: QubitPrep,
    lambda_coupling: f64,
    ratios: &[f64],
    tau: f64,
) -> Result<DeltaScan> {
    if ratios.is_empty() {
        return Err(Error::Config("empty detuning list".into()));
    }
    let h = default_step(beta);
    let trunc = FockTruncation::for_tail(InverseTemperature::new(beta.value() - 2.0 * h)?, 1e-15)?;
    let mut points = Vec::with_capacity(ratios.len());
    for &ratio in ratios {
        let delta = ratio * lambda_coupling;
        let params = FullJcParams::new(
            lambda_coupling,
            delta,
            tau * delta / lambda_coupling.powi(2),
        )?;
        let qfi_full = qfi_numeric_with(
            |b| full_jc_probe_state(b, prep, params, FockTruncation::new(b, trunc.dim)?),
            beta,
            h,
        )?;
        let mut qfi_dispersive = [0.0; 2];
        let mut gaps = [0.0; 2];
        for (k, c) in G_EFF_CANDIDATES.iter().enumerate() {
            let hd = qfi(ModelId::Dispersive, beta, prep, ProtocolTime::new(c * tau)?)?;
            qfi_dispersive[k] = hd;
            gaps[k] = (qfi_full - hd).abs() / hd;
        }
        points.push(DeltaScanPoint {
            ratio,
            dispersive_regime: params.dispersive_regime(beta),
            qfi_full,
            qfi_dispersive,
            gaps,
        });
    }
    let last = points.last().expect("non-empty").gaps;
    let winner = if last[0] <= last[1] { 0 } else { 1 };
    Ok(DeltaScan {
        beta: beta.value(),
        tau,
        lambda_coupling,
        points,
        winner,
    })
}
