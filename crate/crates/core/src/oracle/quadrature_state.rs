use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::models::{
    pure_qubit_state, DensityMatrix2, InverseTemperature, ProtocolTime, QubitPrep,
};
use crate::qmath::{coth_half, gauss_hermite_rule_cached, Complex2x2, PAULI_X};

/// Smallest accepted quadrature order.
pub const MIN_QUADRATURE_ORDER: usize = 32;
/// Order used by default in oracle comparisons.
pub const DEFAULT_QUADRATURE_ORDER: usize = 128;

/// `exp(−iφσ_x)`.
pub(crate) fn x_rotation(angle: f64) -> Complex2x2 {
    let (s, c) = angle.sin_cos();
    Complex2x2::identity().scale(c) - PAULI_X.scale_complex(num_complex::Complex64::new(0.0, s))
}

/// Transverse probe state by direct averaging of `e^{−iτxσ_x}|ψ⟩⟨ψ|e^{iτxσ_x}`
/// over the Gaussian quadrature distribution of a (displaced) thermal
/// oscillator: mean `√2·α`, variance `n̄ + 1/2`.
pub fn probe_state_transverse_quadrature(
    beta: InverseTemperature,
    prep: QubitPrep,
    time: ProtocolTime,
    alpha: f64,
    order: usize,
) -> Result<DensityMatrix2> {
    if order < MIN_QUADRATURE_ORDER {
        return Err(Error::domain("order", order as f64, "order >= 32"));
    }
    if !alpha.is_finite() {
        return Err(Error::domain("alpha", alpha, "finite real alpha"));
    }
    let rule = gauss_hermite_rule_cached(order)?;
    let rho0 = *pure_qubit_state(prep).matrix();
    let tau = time.value();
    if tau == 0.0 {
        return DensityMatrix2::new(rho0);
    }
    let mean = SQRT_2 * alpha;
    // √(2σ²) with σ² = coth(β/2)/2
    let width = coth_half(beta.value()).sqrt();
    let norm = std::f64::consts::PI.sqrt();
    let mut acc = Complex2x2::zero();
    for (&y, &w) in rule.nodes.iter().zip(&rule.weights) {
        let u = x_rotation(tau * (mean + width * y));
        acc = acc + rho0.conjugate_by(&u).scale(w / norm);
    }
    let hermitian = (acc + acc.adjoint()).scale(0.5);
    DensityMatrix2::new(hermitian)
}
