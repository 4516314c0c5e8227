use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dimensionless inverse temperature `β = ℏΩ/(k_B T)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct InverseTemperature(f64);

impl InverseTemperature {
    pub fn new(beta: f64) -> Result<Self> {
        if beta.is_finite() && beta > 0.0 && (-beta).exp() > 0.0 {
            Ok(Self(beta))
        } else {
            Err(Error::domain("beta", beta, "0 < beta < 745"))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Boltzmann ratio `e^{−β}`.
    #[inline]
    pub fn boltzmann(self) -> f64 {
        (-self.0).exp()
    }

    /// Mean occupation `n̄ = 1/(e^β − 1)`.
    pub fn n_bar(self) -> f64 {
        1.0 / self.0.exp_m1()
    }

    /// Fock weight `p_n = (1 − e^{−β}) e^{−nβ}`.
    pub fn fock_weight(self, n: usize) -> f64 {
        -(-self.0).exp_m1() * (-(n as f64) * self.0).exp()
    }
}

impl TryFrom<f64> for InverseTemperature {
    type Error = Error;
    fn try_from(beta: f64) -> Result<Self> {
        Self::new(beta)
    }
}

impl From<InverseTemperature> for f64 {
    fn from(b: InverseTemperature) -> f64 {
        b.0
    }
}

/// Bloch angles of the pure probe preparation `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitPrep {
    pub theta: f64,
    pub phi: f64,
}

impl QubitPrep {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::domain("theta", theta, "0 <= theta <= pi"));
        }
        if !(0.0..TAU).contains(&phi) {
            return Err(Error::domain("phi", phi, "0 <= phi < 2 pi"));
        }
        Ok(Self { theta, phi })
    }

    /// Like [`QubitPrep::new`] but reduces `φ` modulo `2π` first.
    pub fn wrapped(theta: f64, phi: f64) -> Result<Self> {
        let phi = phi.rem_euclid(TAU);
        Self::new(theta, if phi >= TAU { 0.0 } else { phi })
    }

    pub fn ground() -> Self {
        Self {
            theta: 0.0,
            phi: 0.0,
        }
    }

    pub fn state_vector(&self) -> [Complex64; 2] {
        let (s, c) = (0.5 * self.theta).sin_cos();
        [Complex64::from(c), Complex64::from_polar(s, self.phi)]
    }

    pub fn bloch(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

/// Dimensionless interaction time `τ = g·t`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ProtocolTime(f64);

impl ProtocolTime {
    pub fn new(tau: f64) -> Result<Self> {
        if tau.is_finite() && tau >= 0.0 {
            Ok(Self(tau))
        } else {
            Err(Error::domain("tau", tau, "finite tau >= 0"))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for ProtocolTime {
    type Error = Error;
    fn try_from(tau: f64) -> Result<Self> {
        Self::new(tau)
    }
}

impl From<ProtocolTime> for f64 {
    fn from(t: ProtocolTime) -> f64 {
        t.0
    }
}

/// Qubit–oscillator coupling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelId {
    /// `g·X ⊗ σ_x`
    Transverse,
    /// `g·a†a ⊗ σ_x`
    Dispersive,
}

impl ModelId {
    pub const ALL: [ModelId; 2] = [ModelId::Transverse, ModelId::Dispersive];

    pub fn name(self) -> &'static str {
        match self {
            ModelId::Transverse => "transverse",
            ModelId::Dispersive => "dispersive",
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "transverse" => Ok(ModelId::Transverse),
            "dispersive" => Ok(ModelId::Dispersive),
            other => Err(Error::Config(format!("unknown model `{other}`"))),
        }
    }
}
