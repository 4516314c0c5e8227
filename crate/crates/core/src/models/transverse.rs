use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::qmath::{coth_half, csch_half_sq};

use super::{DensityMatrix2, InverseTemperature, ProbeState, ProtocolTime, QubitPrep};

/// `ζ = coth(β/2)·τ²`.
pub fn decoherence_exponent(beta: InverseTemperature, time: ProtocolTime) -> f64 {
    coth_half(beta.value()) * time.value() * time.value()
}

fn build(prep: QubitPrep, zeta: f64, d_zeta: f64) -> ProbeState {
    let (st, ct) = prep.theta.sin_cos();
    let (sp, cp) = prep.phi.sin_cos();
    let decay = (-zeta).exp();
    let loss = (-zeta).exp_m1();
    let half_sin_sq = (0.5 * prep.theta).sin().powi(2);
    let half_cos_sq = (0.5 * prep.theta).cos().powi(2);
    let populations = [half_cos_sq + 0.5 * ct * loss, half_sin_sq - 0.5 * ct * loss];
    let bloch = [st * cp, st * sp * decay, ct * decay];
    let d_bloch = [0.0, -d_zeta * bloch[1], -d_zeta * bloch[2]];
    let s_sq = (st * sp).powi(2) + ct * ct;
    let defect = -s_sq * (-2.0 * zeta).exp_m1();
    ProbeState {
        rho: DensityMatrix2::from_parts(populations, bloch[0], bloch[1], defect),
        bloch,
        d_bloch,
        defect,
    }
}

/// Transverse probe state with its β-derivative.
pub fn transverse_probe(
    beta: InverseTemperature,
    prep: QubitPrep,
    time: ProtocolTime,
) -> ProbeState {
    let tau_sq = time.value() * time.value();
    let zeta = decoherence_exponent(beta, time);
    let d_zeta = -0.5 * tau_sq * csch_half_sq(beta.value());
    build(prep, zeta, d_zeta)
}

/// Transverse probe state for an arbitrary decoherence exponent `ζ`.
pub fn transverse_state_for_zeta(prep: QubitPrep, zeta: f64) -> DensityMatrix2 {
    build(prep, zeta, 0.0).rho
}

/// Reduced probe state after the transverse coupling to a thermal oscillator.
pub fn probe_state_transverse(
    beta: InverseTemperature,
    prep: QubitPrep,
    time: ProtocolTime,
) -> DensityMatrix2 {
    transverse_probe(beta, prep, time).rho
}

/// Transverse probe for an oscillator displaced by real `α`: the thermal
/// result conjugated by `exp(−i√2·α·τ·σ_x)`.
pub fn transverse_probe_displaced(
    beta: InverseTemperature,
    prep: QubitPrep,
    time: ProtocolTime,
    alpha: f64,
) -> Result<ProbeState> {
    if !alpha.is_finite() {
        return Err(Error::domain("alpha", alpha, "finite real alpha"));
    }
    let base = transverse_probe(beta, prep, time);
    let (s, c) = (2.0 * SQRT_2 * alpha * time.value()).sin_cos();
    let rotate = |r: [f64; 3]| [r[0], r[1] * c - r[2] * s, r[1] * s + r[2] * c];
    let bloch = rotate(base.bloch);
    let d_bloch = rotate(base.d_bloch);
    let populations = [0.5 * (1.0 + bloch[2]), 0.5 * (1.0 - bloch[2])];
    Ok(ProbeState {
        rho: DensityMatrix2::from_parts(populations, bloch[0], bloch[1], base.defect),
        bloch,
        d_bloch,
        defect: base.defect,
    })
}

pub fn probe_state_transverse_displaced(
    beta: InverseTemperature,
    prep: QubitPrep,
    time: ProtocolTime,
    alpha: f64,
) -> Result<DensityMatrix2> {
    transverse_probe_displaced(beta, prep, time, alpha).map(|p| p.rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::pure_qubit_state;
    use crate::qmath::finite_diff;
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

    #[test]
    fn zero_time_is_pure() {
        let prep = p(1.1, 2.0);
        let rho = probe_state_transverse(b(0.7), prep, t(0.0));
        assert!(rho.trace_distance(&pure_qubit_state(prep)) < 1e-16);
    }

    #[test]
    fn sigma_x_eigenstate_is_frozen() {
        for (beta, tau) in [(0.3, 2.0), (5.0, 0.4)] {
            let rho = probe_state_transverse(b(beta), p(FRAC_PI_2, 0.0), t(tau));
            for i in 0..2 {
                for j in 0..2 {
                    assert!((rho.get(i, j) - 0.5).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn reference_population() {
        let zeta = decoherence_exponent(b(2.0), t(0.5));
        assert!((zeta - 0.25 / 1f64.tanh()).abs() < 1e-15);
        assert!((zeta - 0.32826).abs() < 1e-5);
        let rho = probe_state_transverse(b(2.0), p(0.0, 0.0), t(0.5));
        assert!((rho.populations()[0] - 0.86009).abs() < 1e-5);
        assert!((rho.populations()[0] - 0.5 * (1.0 + (-zeta).exp())).abs() < 1e-15);
    }

    #[test]
    fn displaced_limits() {
        let prep = p(0.7, 1.2);
        let base = probe_state_transverse(b(2.0), prep, t(0.5));
        let zero = probe_state_transverse_displaced(b(2.0), prep, t(0.5), 0.0).unwrap();
        assert!(base.trace_distance(&zero) < 1e-16);
        let plus =
            probe_state_transverse_displaced(b(2.0), p(FRAC_PI_2, 0.0), t(0.5), 1.7).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((plus.get(i, j) - 0.5).norm() < 1e-15);
            }
        }
        assert!(probe_state_transverse_displaced(b(2.0), prep, t(0.5), f64::NAN).is_err());
    }

    #[test]
    fn purity_decreases_at_ground_preparation() {
        let mut last = 1.0;
        for k in 1..100 {
            let rho = probe_state_transverse(b(1.5), p(0.0, 0.0), t(0.02 * k as f64));
            let zeta = decoherence_exponent(b(1.5), t(0.02 * k as f64));
            assert!((rho.purity() - 0.5 * (1.0 + (-2.0 * zeta).exp())).abs() < 1e-15);
            assert!(rho.purity() < last);
            last = rho.purity();
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let prep = p(0.9, 0.4);
        let time = t(0.8);
        let probe = transverse_probe(b(1.3), prep, time);
        for k in 0..3 {
            let fd = finite_diff(|x| transverse_probe(b(x), prep, time).bloch[k], 1.3, 1e-3);
            assert!((fd - probe.d_bloch[k]).abs() < 1e-10);
        }
    }

    proptest! {
        #[test]
        fn valid_states(beta in 0.1..20.0f64, theta in 0.0..PI, phi in 0.0..(2.0 * PI), tau in 0.0..PI, alpha in -3.0..3.0f64) {
            let prep = p(theta, phi);
            let probe = transverse_probe(b(beta), prep, t(tau));
            prop_assert!(probe.rho.validate().is_ok());
            let r = probe.bloch;
            prop_assert!((probe.defect - (1.0 - r[0]*r[0] - r[1]*r[1] - r[2]*r[2])).abs() < 1e-14);
            let d = probe_state_transverse_displaced(b(beta), prep, t(tau), alpha).unwrap();
            prop_assert!(d.validate().is_ok());
            // symmetric under θ → π − θ up to a relabelled population
            let mirror = probe_state_transverse(b(beta), p(PI - theta, phi), t(tau));
            prop_assert!((mirror.populations()[0] - probe.rho.populations()[1]).abs() < 1e-15);
        }
    }
}
