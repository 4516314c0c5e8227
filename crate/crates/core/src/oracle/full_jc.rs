use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{DensityMatrix2, InverseTemperature, QubitPrep};
use crate::qmath::Complex2x2;

use super::focksum::FockTruncation;

/// Largest thermal weight tolerated in the top two retained levels.
pub const MAX_TOP_WEIGHT: f64 = 1e-10;

/// Detuned Jaynes–Cummings parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FullJcParams {
    /// Coupling λ.
    pub lambda_coupling: f64,
    /// Detuning Δ = Ω − ω.
    pub delta: f64,
    /// Evolution time t.
    pub time: f64,
}

impl FullJcParams {
    pub fn new(lambda_coupling: f64, delta: f64, time: f64) -> Result<Self> {
        if !(lambda_coupling >= 0.0 && lambda_coupling.is_finite()) {
            return Err(Error::domain(
                "lambda",
                lambda_coupling,
                "finite lambda >= 0",
            ));
        }
        if !delta.is_finite() {
            return Err(Error::domain("delta", delta, "finite delta"));
        }
        if !(time >= 0.0 && time.is_finite()) {
            return Err(Error::domain("time", time, "finite t >= 0"));
        }
        Ok(Self {
            lambda_coupling,
            delta,
            time,
        })
    }

    /// `Δ²/4 > 100·λ²·(n̄ + 1)`.
    pub fn dispersive_regime(&self, beta: InverseTemperature) -> bool {
        self.delta * self.delta / 4.0 > 100.0 * self.lambda_coupling.powi(2) * (beta.n_bar() + 1.0)
    }

    /// Dispersive-model time `τ = g_eff·t` for `g_eff = λ²/Δ`.
    pub fn dispersive_time(&self) -> f64 {
        self.lambda_coupling.powi(2) / self.delta * self.time
    }
}

/// Propagator on the manifold `{|1,n⟩, |0,n+1⟩}` in the frame rotating with
/// the free excitation number:
/// `e^{iΔt/2}[cos(Ω_n t)𝟙 − i K_n (−Δ/2 σ_z + λ√(n+1) σ_x)]`,
/// `Ω_n = √(Δ²/4 + λ²(n+1))`, `K_n = sin(Ω_n t)/Ω_n`.
pub fn manifold_propagator(params: &FullJcParams, n: usize) -> Complex2x2 {
    let FullJcParams {
        lambda_coupling: lambda,
        delta,
        time: t,
    } = *params;
    let g = lambda * ((n + 1) as f64).sqrt();
    let omega = (0.25 * delta * delta + g * g).sqrt();
    let (s, c) = (omega * t).sin_cos();
    let k = if omega == 0.0 { t } else { s / omega };
    let i = Complex64::new(0.0, 1.0);
    let gen = Complex2x2::new(
        Complex64::from(-0.5 * delta),
        Complex64::from(g),
        Complex64::from(g),
        Complex64::from(0.5 * delta),
    );
    (Complex2x2::identity().scale(c) - gen.scale_complex(i * k))
        .scale_complex(Complex64::from_polar(1.0, 0.5 * delta * t))
}

/// Reduced qubit state after exact detuned Jaynes–Cummings evolution of
/// `|ψ⟩⟨ψ| ⊗ ρ_th`, evaluated blockwise.
///
/// The preparation is specified in the dispersive-model frame and mapped
/// through a Hadamard gate, which exchanges the `σ_x` coupling of that model
/// with the `σ_z` structure of the dispersive Jaynes–Cummings limit.
pub fn full_jc_probe_state(
    beta: InverseTemperature,
    prep: QubitPrep,
    params: FullJcParams,
    trunc: FockTruncation,
) -> Result<DensityMatrix2> {
    let top = trunc.top_weight(beta);
    if top > MAX_TOP_WEIGHT {
        return Err(Error::TruncationTooSmall {
            dim: trunc.dim,
            weight: top,
        });
    }
    let v = prep.state_vector();
    let c0 = (v[0] + v[1]) * FRAC_1_SQRT_2;
    let c1 = (v[0] - v[1]) * FRAC_1_SQRT_2;

    let blocks: Vec<Complex2x2> = (0..trunc.dim)
        .into_par_iter()
        .map(|n| manifold_propagator(&params, n))
        .collect();
    let mut rho00 = 0.0;
    let mut rho11 = 0.0;
    let mut rho01 = Complex64::new(0.0, 0.0);
    let mut weight = 0.0;
    for n in (0..trunc.dim).rev() {
        let p = beta.fock_weight(n);
        // |0,n⟩ is the lower member of manifold n − 1; |0,0⟩ is stationary.
        let (a, b) = if n == 0 {
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        } else {
            (blocks[n - 1].get(1, 1), blocks[n - 1].get(0, 1))
        };
        // |1,n⟩ is the upper member of manifold n.
        let (c, d) = (blocks[n].get(0, 0), blocks[n].get(1, 0));
        rho00 += p * ((c0 * a).norm_sqr() + (c1 * d).norm_sqr());
        rho11 += p * ((c0 * b).norm_sqr() + (c1 * c).norm_sqr());
        rho01 += (c0 * a * (c1 * c).conj()) * p;
        weight += p;
    }
    let m = Complex2x2::new(rho00.into(), rho01, rho01.conj(), rho11.into()).scale(1.0 / weight);
    DensityMatrix2::new(m)
}
