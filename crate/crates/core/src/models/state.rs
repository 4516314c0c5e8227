use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmath::{eig_hermitian_2x2, Complex2x2, Eigen2};

use super::QubitPrep;

/// Tolerance on the density-matrix invariants.
pub const STATE_TOL: f64 = 1e-12;

/// Qubit density matrix.
///
/// Carries its determinant `(1 − |r|²)/4` separately so that generators
/// which know it in cancellation-free form can pass it on; the small
/// eigenvalue of nearly pure states is then recovered to full relative
/// precision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrix2 {
    matrix: Complex2x2,
    det: f64,
}

impl DensityMatrix2 {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: Complex2x2) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::InvalidState("non-finite entries".into()));
        }
        let eig = eig_hermitian_2x2(&matrix)?;
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace {tr}")));
        }
        if eig.values[1] < -STATE_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {:e}",
                eig.values[1]
            )));
        }
        let det = matrix.det().re.max(0.0);
        Ok(Self { matrix, det })
    }

    /// State with Bloch vector `r`; `|r| ≤ 1 + 1e−12` is required.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        let norm_sq = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
        if !(norm_sq.sqrt() <= 1.0 + STATE_TOL) {
            return Err(Error::InvalidState(format!(
                "Bloch vector length {}",
                norm_sq.sqrt()
            )));
        }
        Ok(Self::from_parts(
            [(1.0 + r[2]) / 2.0, (1.0 - r[2]) / 2.0],
            r[0],
            r[1],
            (1.0 - norm_sq).max(0.0),
        ))
    }

    /// Assembles a state from populations, transverse Bloch components and
    /// the defect `1 − |r|²`, each computed by the caller in stable form.
    pub(crate) fn from_parts(populations: [f64; 2], rx: f64, ry: f64, defect: f64) -> Self {
        let off = Complex64::new(rx / 2.0, -ry / 2.0);
        Self {
            matrix: Complex2x2::new(
                populations[0].into(),
                off,
                off.conj(),
                populations[1].into(),
            ),
            det: defect.max(0.0) / 4.0,
        }
    }

    pub fn matrix(&self) -> &Complex2x2 {
        &self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix.get(row, col)
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn populations(&self) -> [f64; 2] {
        [self.matrix.get(0, 0).re, self.matrix.get(1, 1).re]
    }

    pub fn bloch(&self) -> [f64; 3] {
        let off = self.matrix.get(0, 1);
        let [p0, p1] = self.populations();
        [2.0 * off.re, -2.0 * off.im, p0 - p1]
    }

    pub fn purity(&self) -> f64 {
        1.0 - 2.0 * self.det
    }

    /// Eigen-decomposition with the small eigenvalue refined from the
    /// determinant.
    pub fn eigen(&self) -> Eigen2 {
        eig_hermitian_2x2(&self.matrix)
            .expect("density matrix is Hermitian by construction")
            .with_determinant(self.det)
    }

    /// `½ Tr|ρ − σ|`, which for qubits is half the Bloch-vector distance.
    pub fn trace_distance(&self, other: &DensityMatrix2) -> f64 {
        let d = self.matrix - other.matrix;
        let dz = d.get(0, 0).re - d.get(1, 1).re;
        let off = 0.5 * (d.get(0, 1) + d.get(1, 0).conj());
        0.5 * (dz * dz + 4.0 * off.norm_sqr()).sqrt()
    }

    /// Checks the invariants of [`DensityMatrix2::new`].
    pub fn validate(&self) -> Result<()> {
        Self::new(self.matrix).map(|_| ())
    }
}

/// A probe state together with its Bloch vector and analytic `∂_β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeState {
    pub rho: DensityMatrix2,
    pub bloch: [f64; 3],
    pub d_bloch: [f64; 3],
    /// `1 − |r|²` in cancellation-free form.
    pub defect: f64,
}

impl ProbeState {
    /// `∂_β ρ = ½ ∂_β r · σ`.
    pub fn d_rho(&self) -> Complex2x2 {
        Complex2x2::from_pauli(0.0, self.d_bloch).scale(0.5)
    }

    /// `∂_β det ρ = −(r·∂_β r)/2`.
    pub fn d_det(&self) -> f64 {
        let r = self.bloch;
        let d = self.d_bloch;
        -0.5 * (r[0] * d[0] + r[1] * d[1] + r[2] * d[2])
    }

    /// Eigen-decomposition built from the Bloch vector, with the gap
    /// `λ₊ − λ₋ = |r|` returned separately.
    ///
    /// Nearly maximally mixed states keep full relative precision in the gap.
    pub fn spectrum(&self) -> (Eigen2, f64) {
        let r = self.bloch;
        let norm = r[0].hypot(r[1]).hypot(r[2]);
        if norm == 0.0 {
            return (self.rho.eigen(), 0.0);
        }
        let mut eig = eig_hermitian_2x2(&Complex2x2::from_pauli(0.0, r))
            .expect("Pauli combination is Hermitian");
        let plus = 0.5 * (1.0 + norm);
        eig.values = [plus, 0.25 * self.defect.max(0.0) / plus];
        (eig, norm)
    }

    /// Lifts a β-independent state.
    pub fn constant(rho: DensityMatrix2) -> Self {
        let bloch = rho.bloch();
        Self {
            rho,
            bloch,
            d_bloch: [0.0; 3],
            defect: 4.0 * rho.det(),
        }
    }
}

/// Projector onto `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
pub fn pure_qubit_state(prep: QubitPrep) -> DensityMatrix2 {
    let v = prep.state_vector();
    DensityMatrix2 {
        matrix: Complex2x2::outer(v, v),
        det: 0.0,
    }
}
