//! Numerical building blocks shared by every other module: 2×2 complex
//! matrices and their Hermitian eigen-decomposition, the principal Lambert W
//! branch, Gauss–Hermite rules, thermal geometric sums, finite differences
//! and one-dimensional golden-section search.

mod calculus;
mod lambert;
mod matrix;
mod quadrature;
mod special;

pub use calculus::{finite_diff, golden_section_max, GoldenMax};
pub use lambert::lambert_w0;
pub use matrix::{eig_hermitian_2x2, Complex2x2, Eigen2, PAULI_X, PAULI_Y, PAULI_Z};
pub use quadrature::{
    gauss_hermite_rule, gauss_hermite_rule_cached, QuadratureRule, MAX_GAUSS_HERMITE_ORDER,
};
pub use special::{coth_half, csch_half_sq, sinc, thermal_phase_sum, thermal_phase_sum_derivative};

pub use num_complex::Complex64;
