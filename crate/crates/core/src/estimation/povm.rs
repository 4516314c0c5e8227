use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{DensityMatrix2, QubitPrep};
use crate::qmath::{eig_hermitian_2x2, Complex2x2};

/// Tolerance on the POVM invariants.
pub const POVM_TOL: f64 = 1e-12;
/// Largest supported number of outcomes.
pub const MAX_OUTCOMES: usize = 8;

/// Qubit POVM: positive effects summing to the identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Povm2 {
    effects: Vec<Complex2x2>,
}

impl Povm2 {
    pub fn new(effects: Vec<Complex2x2>) -> Result<Self> {
        if effects.is_empty() || effects.len() > MAX_OUTCOMES {
            return Err(Error::InvalidPovm(format!(
                "{} effects (expected 1 to {MAX_OUTCOMES})",
                effects.len()
            )));
        }
        let mut total = Complex2x2::zero();
        for (j, e) in effects.iter().enumerate() {
            let eig = eig_hermitian_2x2(e)
                .map_err(|err| Error::InvalidPovm(format!("effect {j}: {err}")))?;
            if eig.values[1] < -POVM_TOL {
                return Err(Error::InvalidPovm(format!(
                    "effect {j} has eigenvalue {:e}",
                    eig.values[1]
                )));
            }
            total = total + *e;
        }
        let dev = total.max_abs_diff(&Complex2x2::identity());
        if dev > POVM_TOL {
            return Err(Error::InvalidPovm(format!(
                "effects sum to identity only within {dev:e}"
            )));
        }
        Ok(Self { effects })
    }

    /// `{|0⟩⟨0|, |1⟩⟨1|}`.
    pub fn population() -> Self {
        Self {
            effects: vec![Complex2x2::diag(1.0, 0.0), Complex2x2::diag(0.0, 1.0)],
        }
    }

    /// Projective measurement onto `prep` and its antipode.
    pub fn projective(prep: QubitPrep) -> Self {
        let [x, y, z] = prep.bloch();
        Self {
            effects: vec![
                Complex2x2::from_pauli(0.5, [x / 2.0, y / 2.0, z / 2.0]),
                Complex2x2::from_pauli(0.5, [-x / 2.0, -y / 2.0, -z / 2.0]),
            ],
        }
    }

    /// Random POVM with `outcomes` effects `S^{−1/2} A_j S^{−1/2}`, where
    /// `A_j = B_j B_j†` for Gaussian `B_j` and `S = Σ A_j`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, outcomes: usize) -> Result<Self> {
        if !(1..=MAX_OUTCOMES).contains(&outcomes) {
            return Err(Error::InvalidPovm(format!("{outcomes} outcomes requested")));
        }
        let mut raw = Vec::with_capacity(outcomes);
        for _ in 0..outcomes {
            let mut entry =
                || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let b = Complex2x2::new(entry(), entry(), entry(), entry());
            raw.push(b * b.adjoint());
        }
        let total = raw.iter().fold(Complex2x2::zero(), |acc, a| acc + *a);
        let eig = eig_hermitian_2x2(&total)?;
        let inv_sqrt = Complex2x2::outer(eig.vectors[0], eig.vectors[0])
            .scale(eig.values[0].powf(-0.5))
            + Complex2x2::outer(eig.vectors[1], eig.vectors[1]).scale(eig.values[1].powf(-0.5));
        let effects = raw
            .into_iter()
            .map(|a| {
                let e = inv_sqrt * a * inv_sqrt;
                // exact Hermiticity
                (e + e.adjoint()).scale(0.5)
            })
            .collect();
        Self::new(effects)
    }

    pub fn effects(&self) -> &[Complex2x2] {
        &self.effects
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }
}

/// `Tr[Mρ]` for Hermitian `M`.
pub(crate) fn expectation(m: &Complex2x2, rho: &Complex2x2) -> f64 {
    let mut acc = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            acc += (m.get(i, j) * rho.get(j, i)).re;
        }
    }
    acc
}

/// `p_j = Tr[ρ Π_j]`.
pub fn outcome_probabilities(state: &DensityMatrix2, povm: &Povm2) -> Vec<f64> {
    povm.effects
        .iter()
        .map(|e| expectation(e, state.matrix()))
        .collect()
}
