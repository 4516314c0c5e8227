use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Hermiticity tolerance accepted by [`eig_hermitian_2x2`].
pub const HERMITIAN_TOL: f64 = 1e-12;

/// A 2×2 complex matrix in row-major order over the basis `|0⟩, |1⟩`.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Complex2x2 {
    pub entries: [[Complex64; 2]; 2],
}

pub const PAULI_X: Complex2x2 = Complex2x2 {
    entries: [[ZERO, ONE], [ONE, ZERO]],
};
pub const PAULI_Y: Complex2x2 = Complex2x2 {
    entries: [[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]],
};
pub const PAULI_Z: Complex2x2 = Complex2x2 {
    entries: [[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]],
};

impl Complex2x2 {
    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self {
            entries: [[a, b], [c, d]],
        }
    }

    pub const fn zero() -> Self {
        Self::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub const fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn diag(a: f64, d: f64) -> Self {
        Self::new(a.into(), ZERO, ZERO, d.into())
    }

    /// `c0·𝟙 + c[0]·σx + c[1]·σy + c[2]·σz`.
    pub fn from_pauli(c0: f64, c: [f64; 3]) -> Self {
        Self::new(
            Complex64::new(c0 + c[2], 0.0),
            Complex64::new(c[0], -c[1]),
            Complex64::new(c[0], c[1]),
            Complex64::new(c0 - c[2], 0.0),
        )
    }

    /// Outer product `|u⟩⟨v|`.
    pub fn outer(u: [Complex64; 2], v: [Complex64; 2]) -> Self {
        Self::new(
            u[0] * v[0].conj(),
            u[0] * v[1].conj(),
            u[1] * v[0].conj(),
            u[1] * v[1].conj(),
        )
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn adjoint(&self) -> Self {
        let [[a, b], [c, d]] = self.entries;
        Self::new(a.conj(), c.conj(), b.conj(), d.conj())
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn det(&self) -> Complex64 {
        let [[a, b], [c, d]] = self.entries;
        a * d - b * c
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        self.map(|z| z * s)
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        let [[a, b], [c, d]] = self.entries;
        Self::new(f(a), f(b), f(c), f(d))
    }

    /// `M v`.
    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let [[a, b], [c, d]] = self.entries;
        [a * v[0] + b * v[1], c * v[0] + d * v[1]]
    }

    /// `⟨u| M |v⟩`.
    pub fn sandwich(&self, u: [Complex64; 2], v: [Complex64; 2]) -> Complex64 {
        let mv = self.apply(v);
        u[0].conj() * mv[0] + u[1].conj() * mv[1]
    }

    /// `U M U†`.
    pub fn conjugate_by(&self, u: &Complex2x2) -> Self {
        *u * *self * u.adjoint()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Complex2x2) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().flatten().all(|z| z.is_finite())
    }

    /// Largest entry of `M − M†`.
    pub fn hermitian_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Coefficients `(c0, cx, cy, cz)` with `M = c0·𝟙 + Σ c_k σ_k`, taking real
    /// parts (exact for Hermitian input).
    pub fn pauli_coefficients(&self) -> [f64; 4] {
        let [[a, b], [c, d]] = self.entries;
        [
            0.5 * (a + d).re,
            0.5 * (b + c).re,
            0.5 * (c - b).im,
            0.5 * (a - d).re,
        ]
    }
}

impl Add for Complex2x2 {
    type Output = Complex2x2;
    fn add(self, rhs: Complex2x2) -> Complex2x2 {
        let mut out = self;
        for (row, rrow) in out.entries.iter_mut().zip(rhs.entries) {
            for (z, w) in row.iter_mut().zip(rrow) {
                *z += w;
            }
        }
        out
    }
}

impl Sub for Complex2x2 {
    type Output = Complex2x2;
    fn sub(self, rhs: Complex2x2) -> Complex2x2 {
        self + rhs.scale(-1.0)
    }
}

impl Mul for Complex2x2 {
    type Output = Complex2x2;
    fn mul(self, rhs: Complex2x2) -> Complex2x2 {
        let a = self.entries;
        let b = rhs.entries;
        let mut out = Complex2x2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.entries[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        out
    }
}

impl fmt::Debug for Complex2x2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// Spectral decomposition of a Hermitian 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigen2 {
    /// Eigenvalues in descending order.
    pub values: [f64; 2],
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: [[Complex64; 2]; 2],
}

impl Eigen2 {
    /// Replaces the smaller eigenvalue by `det / λ_max`.
    ///
    /// When the determinant is known to full relative precision this recovers
    /// the small eigenvalue of a nearly pure state, which the entry-wise
    /// formula loses to cancellation.
    pub fn with_determinant(mut self, det: f64) -> Self {
        if self.values[0] > 0.0 && det >= 0.0 {
            self.values[1] = det / self.values[0];
        }
        self
    }

    pub fn reconstruct(&self) -> Complex2x2 {
        Complex2x2::outer(self.vectors[0], self.vectors[0]).scale(self.values[0])
            + Complex2x2::outer(self.vectors[1], self.vectors[1]).scale(self.values[1])
    }
}

/// Eigen-decomposition of a Hermitian 2×2 matrix (eigenvalues descending).
pub fn eig_hermitian_2x2(m: &Complex2x2) -> Result<Eigen2> {
    if !m.is_finite() {
        return Err(Error::NotHermitian(f64::NAN));
    }
    let dev = m.hermitian_deviation();
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let [[a, b], [c, d]] = m.entries;
    let (a, d) = (a.re, d.re);
    let b = 0.5 * (b + c.conj());
    let mean = 0.5 * (a + d);
    let half_diff = 0.5 * (a - d);
    let radius = half_diff.hypot(b.norm());
    let values = [mean + radius, mean - radius];

    let scale = a.abs().max(d.abs()).max(b.norm());
    if radius <= f64::EPSILON * scale || radius == 0.0 {
        return Ok(Eigen2 {
            values,
            vectors: [[ONE, ZERO], [ZERO, ONE]],
        });
    }
    // Build each vector from the larger of the two available components.
    let (top, bottom) = if half_diff >= 0.0 {
        let lead = radius + half_diff;
        let n = lead.hypot(b.norm());
        (
            [Complex64::from(lead / n), b.conj() / n],
            [-b / n, Complex64::from(lead / n)],
        )
    } else {
        let lead = radius - half_diff;
        let n = lead.hypot(b.norm());
        (
            [b / n, Complex64::from(lead / n)],
            [Complex64::from(lead / n), -b.conj() / n],
        )
    };
    Ok(Eigen2 {
        values,
        vectors: [top, bottom],
    })
}
