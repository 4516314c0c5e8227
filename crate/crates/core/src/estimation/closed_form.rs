//! Closed-form Fisher information, quantum Fisher information, optimal times
//! and SLD coefficients at the optimal preparations.

use std::f64::consts::E;

use serde::{Deserialize, Serialize};

use crate::models::{decoherence_exponent, InverseTemperature, ProtocolTime, QubitPrep};
use crate::qmath::{csch_half_sq, lambert_w0};

/// `u = 1 + W₀(−2/e²)/2`, the value of `ζ` at the optimal transverse time.
pub fn optimal_decoherence_exponent() -> f64 {
    1.0 + 0.5 * lambert_w0(-2.0 / (E * E)).expect("−2/e² lies above the branch point")
}

/// `τ_opt = √(u·tanh(β/2))`, the time maximizing the transverse population
/// Fisher information at `θ ∈ {0, π}`.
pub fn tau_opt_transverse(beta: InverseTemperature) -> ProtocolTime {
    let q = beta.boltzmann();
    let tanh_half = -(-beta.value()).exp_m1() / (1.0 + q);
    ProtocolTime::new((optimal_decoherence_exponent() * tanh_half).sqrt())
        .expect("positive finite time")
}

/// `cos²θ·csch⁴(β/2)·τ⁴ / (4(e^{2ζ} − cos²θ))`.
pub fn fisher_transverse_population(
    beta: InverseTemperature,
    theta: f64,
    time: ProtocolTime,
) -> f64 {
    let tau = time.value();
    if tau == 0.0 {
        return 0.0;
    }
    let zeta = decoherence_exponent(beta, time);
    let (st, ct) = theta.sin_cos();
    let csch2 = csch_half_sq(beta.value());
    ct * ct * csch2 * csch2 * tau.powi(4) / (4.0 * ((2.0 * zeta).exp_m1() + st * st))
}

/// Transverse QFI `ζ′²(sin²θ sin²φ + cos²θ)/(e^{2ζ} − 1)`.
pub fn qfi_transverse(beta: InverseTemperature, prep: QubitPrep, time: ProtocolTime) -> f64 {
    let tau = time.value();
    if tau == 0.0 {
        return 0.0;
    }
    let zeta = decoherence_exponent(beta, time);
    let d_zeta = -0.5 * tau * tau * csch_half_sq(beta.value());
    let (st, ct) = prep.theta.sin_cos();
    let s_sq = (st * prep.phi.sin()).powi(2) + ct * ct;
    d_zeta * d_zeta * s_sq / (2.0 * zeta).exp_m1()
}

/// Coefficients `(c₀, c_z)` of `L = c₀𝟙 + c_z σ_z` in the form
/// `−(τ²/4)csch²(β/2)[(coth ζ − 1)𝟙 + csch ζ σ_z]`.
pub fn transverse_sld_reference(beta: InverseTemperature, time: ProtocolTime) -> (f64, f64) {
    let zeta = decoherence_exponent(beta, time);
    let pre = -0.25 * time.value().powi(2) * csch_half_sq(beta.value());
    let coth_minus_one = 2.0 / (2.0 * zeta).exp_m1();
    let csch = 1.0 / zeta.sinh();
    (pre * coth_minus_one, pre * csch)
}

fn cos_two_tau_terms(beta: InverseTemperature, time: ProtocolTime) -> (f64, f64, f64, f64) {
    let q = beta.boltzmann();
    let (s2, c2) = (2.0 * time.value()).sin_cos();
    // 1 − 2q cos 2τ + q²
    let d = (1.0 - q).powi(2) + 4.0 * q * time.value().sin().powi(2);
    (q, s2, c2, d)
}

/// Population Fisher information of the dispersive model at `θ = 0`.
pub fn fisher_dispersive_opt(beta: InverseTemperature, time: ProtocolTime) -> f64 {
    let (q, _, c, d) = cos_two_tau_terms(beta, time);
    let s = time.value().sin().powi(2);
    let num = 2.0 * q * s * (2.0 * c * q * q + q * q - 2.0 * q - 1.0).powi(2);
    let den = (1.0 + q) * d * d * (c * q * q - 3.0 * c * q + q * q - q + 2.0);
    if num == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Dispersive QFI at `θ = 0`:
/// `sin²τ[2cos 2τ − 2cosh β − sinh²β] / (2[cos 2τ − cosh β]³)`.
pub fn qfi_dispersive_opt(beta: InverseTemperature, time: ProtocolTime) -> f64 {
    let (q, _, _, d) = cos_two_tau_terms(beta, time);
    let s = time.value().sin().powi(2);
    s * q * (4.0 * q * d + (1.0 - q * q).powi(2)) / d.powi(3)
}

/// Dispersive SLD at `θ = 0` written as `L₀𝟙 − L_x σ_⊥ + L_z σ_∥`, where
/// `σ_∥ = r̂·σ` and `σ_⊥` is `σ_∥` rotated by `π/2` about `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersiveSldCoefficients {
    pub l0: f64,
    pub lx: f64,
    pub lz: f64,
}

/// `L₀ = sinh β/(2[cos 2τ − cosh β])`,
/// `L_x = e^β(e^β − 1) sin 2τ/[1 + e^{2β} − 2e^β cos 2τ]^{3/2}`,
/// `L_z = (e^β + 1)/(2[1 + e^{2β} − 2e^β cos 2τ]^{1/2})`.
pub fn dispersive_sld_coefficients(
    beta: InverseTemperature,
    time: ProtocolTime,
) -> DispersiveSldCoefficients {
    let (q, s2, _, d) = cos_two_tau_terms(beta, time);
    DispersiveSldCoefficients {
        l0: -(1.0 - q * q) / (2.0 * d),
        lx: q * (1.0 - q) * s2 / d.powf(1.5),
        lz: (1.0 + q) / (2.0 * d.sqrt()),
    }
}

/// Leading low-temperature behaviour of [`dispersive_sld_coefficients`].
pub fn dispersive_sld_asymptotes(
    beta: InverseTemperature,
    time: ProtocolTime,
) -> DispersiveSldCoefficients {
    let q = beta.boltzmann();
    let tau = time.value();
    DispersiveSldCoefficients {
        l0: -0.5 - q * (2.0 * tau).cos(),
        lx: q * (2.0 * tau).sin(),
        lz: 0.5 + q * tau.cos().powi(2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::golden_section_max;
    use proptest::prelude::*;

    fn b(x: f64) -> InverseTemperature {
        InverseTemperature::new(x).unwrap()
    }
    fn t(x: f64) -> ProtocolTime {
        ProtocolTime::new(x).unwrap()
    }

    #[test]
    fn optimal_exponent() {
        assert!((optimal_decoherence_exponent() - 0.79681).abs() < 1e-5);
        for beta in [0.3, 1.0, 7.0, 40.0] {
            let zeta = decoherence_exponent(b(beta), tau_opt_transverse(b(beta)));
            assert!((zeta - optimal_decoherence_exponent()).abs() < 1e-14);
        }
    }

    #[test]
    fn tau_opt_values() {
        assert!((tau_opt_transverse(b(1.0)).value() - 0.60681).abs() < 1e-5);
        assert!((tau_opt_transverse(b(50.0)).value() - 0.8926).abs() < 5e-5);
        assert!(tau_opt_transverse(b(700.0)).value() < 0.8927);
    }

    #[test]
    fn tau_opt_is_the_argmax() {
        for beta in [0.2, 1.0, 3.0, 12.0] {
            let m = golden_section_max(
                |x| fisher_transverse_population(b(beta), 0.0, t(x)),
                0.05,
                3.0,
                1e-12,
                200,
            );
            assert!(
                (m.x - tau_opt_transverse(b(beta)).value()).abs() < 1e-6,
                "β = {beta}"
            );
        }
    }

    #[test]
    fn dispersive_literal_forms() {
        for (beta, tau) in [(0.5f64, 0.3f64), (1.0, 1.0), (3.0, 0.9), (7.0, 2.2)] {
            let (c2, ch, sh) = ((2.0 * tau).cos(), beta.cosh(), beta.sinh());
            let h = tau.sin().powi(2) * (2.0 * c2 - 2.0 * ch - sh * sh) / (2.0 * (c2 - ch).powi(3));
            let h_ours = qfi_dispersive_opt(b(beta), t(tau));
            assert!((h - h_ours).abs() < 1e-13 * h);
            let eb = beta.exp();
            let f = 2.0
                * eb
                * eb
                * tau.sin().powi(2)
                * (1.0 + sh - c2 / eb).powi(2)
                * (beta / 2.0).tanh()
                / ((eb - 1.0) * (1.0 + (eb - c2) * (2.0 * eb - 1.0) - eb * c2) * (c2 - ch).powi(2));
            let f_ours = fisher_dispersive_opt(b(beta), t(tau));
            assert!((f - f_ours).abs() < 1e-12 * f);
            let disc = 1.0 + eb * eb - 2.0 * eb * c2;
            let l = dispersive_sld_coefficients(b(beta), t(tau));
            assert!((l.l0 - sh / (2.0 * (c2 - ch))).abs() < 1e-14);
            assert!((l.lx - eb * (eb - 1.0) * (2.0 * tau).sin() / disc.powf(1.5)).abs() < 1e-14);
            assert!((l.lz - (eb + 1.0) / (2.0 * disc.sqrt())).abs() < 1e-14);
        }
    }

    #[test]
    fn cold_asymptotes() {
        let beta = b(10.0);
        for tau in [0.3, 0.7, 1.2, 2.0, 2.8] {
            let target = (-10.0f64).exp() * f64::sin(tau).powi(2);
            assert!((qfi_dispersive_opt(beta, t(tau)) / target - 1.0).abs() < 0.01);
            assert!((fisher_dispersive_opt(beta, t(tau)) / target - 1.0).abs() < 0.01);
            let l = dispersive_sld_coefficients(beta, t(tau));
            let a = dispersive_sld_asymptotes(beta, t(tau));
            assert!((l.l0 / a.l0 - 1.0).abs() < 0.01);
            assert!((l.lx / a.lx - 1.0).abs() < 0.01);
            assert!((l.lz / a.lz - 1.0).abs() < 0.01);
        }
    }

    proptest! {
        #[test]
        fn tau_opt_monotone(beta in 0.05..30.0f64, step in 1e-3..5.0f64) {
            let a = tau_opt_transverse(b(beta)).value();
            let c = tau_opt_transverse(b(beta + step)).value();
            prop_assert!(c > a);
            prop_assert!(c < 0.8927);
        }

        #[test]
        fn fisher_never_exceeds_qfi_in_closed_form(beta in 0.1..20.0f64, tau in 0.01..3.0f64) {
            prop_assert!(fisher_dispersive_opt(b(beta), t(tau)) <= qfi_dispersive_opt(b(beta), t(tau)) * (1.0 + 1e-12));
        }
    }
}
