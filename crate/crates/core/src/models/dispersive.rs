use serde::{Deserialize, Serialize};

use crate::qmath::thermal_phase_sum_derivative;

use super::{DensityMatrix2, InverseTemperature, ProbeState, ProtocolTime, QubitPrep};

/// Thermal averages behind the dispersive probe state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersiveKernel {
    /// `Γ = (1 − e^{−β}) / (4[cos 2τ − cosh β])`
    pub gamma_factor: f64,
    /// `C = Σ p_n cos 2nτ`
    pub cosine_sum: f64,
    /// `S = Σ p_n sin 2nτ`
    pub sine_sum: f64,
    /// `1 − C`
    pub one_minus_cosine: f64,
    /// `1 − C² − S²`
    pub coherence_loss: f64,
}

/// Evaluates the kernel through `e^{−β}`-factored forms, valid for any β.
pub fn dispersive_kernel(beta: InverseTemperature, time: ProtocolTime) -> DispersiveKernel {
    let q = beta.boltzmann();
    let one_minus_q = -(-beta.value()).exp_m1();
    let tau = time.value();
    let sin_sq = tau.sin().powi(2);
    let (s2, c2) = (2.0 * tau).sin_cos();
    // |1 − q e^{2iτ}|²
    let denom = one_minus_q * one_minus_q + 4.0 * q * sin_sq;
    DispersiveKernel {
        gamma_factor: -0.5 * one_minus_q * q / denom,
        cosine_sum: one_minus_q * (1.0 - q * c2) / denom,
        sine_sum: one_minus_q * q * s2 / denom,
        one_minus_cosine: 2.0 * q * (1.0 + q) * sin_sq / denom,
        coherence_loss: 4.0 * q * sin_sq / denom,
    }
}

/// Dispersive probe state with its β-derivative.
pub fn dispersive_probe(
    beta: InverseTemperature,
    prep: QubitPrep,
    time: ProtocolTime,
) -> ProbeState {
    let k = dispersive_kernel(beta, time);
    let dz = thermal_phase_sum_derivative(beta.value(), 2.0 * time.value());
    let (st, ct) = prep.theta.sin_cos();
    let (sp, cp) = prep.phi.sin_cos();
    let (c, s) = (k.cosine_sum, k.sine_sum);
    let a = st * sp;
    let bloch = [st * cp, a * c - ct * s, a * s + ct * c];
    let d_bloch = [0.0, a * dz.re - ct * dz.im, a * dz.im + ct * dz.re];
    let shift = 0.5 * (ct * k.one_minus_cosine - a * s);
    let populations = [
        (0.5 * prep.theta).cos().powi(2) - shift,
        (0.5 * prep.theta).sin().powi(2) + shift,
    ];
    let defect = (a * a + ct * ct) * k.coherence_loss;
    ProbeState {
        rho: DensityMatrix2::from_parts(populations, bloch[0], bloch[1], defect),
        bloch,
        d_bloch,
        defect,
    }
}

/// Reduced probe state after the dispersive coupling to a thermal oscillator.
pub fn probe_state_dispersive(
    beta: InverseTemperature,
    prep: QubitPrep,
    time: ProtocolTime,
) -> DensityMatrix2 {
    dispersive_probe(beta, prep, time).rho
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::pure_qubit_state;
    use crate::qmath::{coth_half, finite_diff, sinc, thermal_phase_sum, Complex64};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn b(x: f64) -> InverseTemperature {
        InverseTemperature::new(x).unwrap()
    }
    fn t(x: f64) -> ProtocolTime {
        ProtocolTime::new(x).unwrap()
    }
    fn p(theta: f64, phi: f64) -> QubitPrep {
        QubitPrep::new(theta, phi).unwrap()
    }

    /// Matrix elements in the Γ form: ρ₀₀ and ρ₀₁.
    fn gamma_form(beta: f64, prep: QubitPrep, tau: f64) -> (f64, Complex64) {
        let g = (1.0 - (-beta).exp()) / (4.0 * ((2.0 * tau).cos() - beta.cosh()));
        let zeta = coth_half(beta) * tau * tau;
        let (st, ct) = prep.theta.sin_cos();
        let (sp, cp) = prep.phi.sin_cos();
        let rho00 = (0.5 * prep.theta).cos().powi(2)
            + g * (2.0 * zeta * ct * sinc(tau).powi(2) - st * sp * (2.0 * tau).sin());
        let rho01 = Complex64::new(
            0.5 * st * cp,
            g * ((beta.exp() - (2.0 * tau).cos()) * st * sp - ct * (2.0 * tau).sin()),
        );
        (rho00, rho01)
    }

    #[test]
    fn kernel_examples() {
        let k0 = dispersive_kernel(b(1.0), t(0.0));
        assert_eq!((k0.cosine_sum, k0.sine_sum), (1.0, 0.0));
        let cold = dispersive_kernel(b(700.0), t(0.9));
        assert!(cold.gamma_factor.abs() < 1e-300 && (cold.cosine_sum - 1.0).abs() < 1e-300);
        let k = dispersive_kernel(b(1.0), t(0.7));
        let g = (1.0 - (-1.0f64).exp()) / (4.0 * (1.4f64.cos() - 1f64.cosh()));
        assert!((k.gamma_factor - g).abs() < 1e-15);
        let z = thermal_phase_sum(1.0, 1.4);
        assert!((k.cosine_sum - z.re).abs() < 1e-15 && (k.sine_sum - z.im).abs() < 1e-15);
    }

    #[test]
    fn reference_population() {
        let rho = probe_state_dispersive(b(1.0), p(0.0, 0.0), t(0.7));
        let c = thermal_phase_sum(1.0, 1.4).re;
        assert!((rho.populations()[0] - (0.5 + 0.5 * c)).abs() < 1e-15);
    }

    #[test]
    fn limits() {
        let prep = p(2.1, 4.0);
        let rho = probe_state_dispersive(b(0.4), prep, t(0.0));
        assert!(rho.trace_distance(&pure_qubit_state(prep)) < 1e-16);
        let plus = probe_state_dispersive(b(0.4), p(FRAC_PI_2, 0.0), t(1.3));
        for i in 0..2 {
            for j in 0..2 {
                assert!((plus.get(i, j) - 0.5).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let prep = p(0.9, 0.4);
        let time = t(0.8);
        let probe = dispersive_probe(b(1.3), prep, time);
        for k in 0..3 {
            let fd = finite_diff(|x| dispersive_probe(b(x), prep, time).bloch[k], 1.3, 1e-3);
            assert!((fd - probe.d_bloch[k]).abs() < 1e-10);
        }
    }

    proptest! {
        #[test]
        fn closed_form_identities(beta in 0.1..20.0f64, theta in 0.0..PI, phi in 0.0..(2.0 * PI), tau in 0.0..PI) {
            let prep = p(theta, phi);
            let probe = dispersive_probe(b(beta), prep, t(tau));
            prop_assert!(probe.rho.validate().is_ok());
            let k = dispersive_kernel(b(beta), t(tau));
            prop_assert!(k.gamma_factor < 0.0);
            prop_assert!(k.cosine_sum.powi(2) + k.sine_sum.powi(2) <= 1.0);
            prop_assert!((k.sine_sum + 2.0 * k.gamma_factor * (2.0 * tau).sin()).abs() <= 1e-13);
            let zeta = coth_half(beta) * tau * tau;
            prop_assert!((k.cosine_sum - 1.0 - 4.0 * k.gamma_factor * zeta * sinc(tau).powi(2)).abs() <= 1e-12);
            let (rho00, rho01) = gamma_form(beta, prep, tau);
            prop_assert!((probe.rho.populations()[0] - rho00).abs() <= 1e-12);
            prop_assert!((probe.rho.get(0, 1) - rho01).norm() <= 1e-12);
            let shifted = probe_state_dispersive(b(beta), prep, t(tau + PI));
            prop_assert!(shifted.matrix().max_abs_diff(probe.rho.matrix()) <= 1e-13);
            let r = probe.bloch;
            prop_assert!((probe.defect - (1.0 - r[0]*r[0] - r[1]*r[1] - r[2]*r[2])).abs() < 1e-14);
        }
    }
}
