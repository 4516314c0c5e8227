use crate::error::{Error, Result};
use crate::models::{
    probe, DensityMatrix2, InverseTemperature, ModelId, ProbeState, ProtocolTime, QubitPrep,
};
use crate::qmath::{Complex2x2, Eigen2};

use super::fisher::ZERO_DERIVATIVE;

/// Relative agreement required between the two QFI routes.
pub const QFI_AGREEMENT: f64 = 1e-8;

/// Eigenvalue derivatives `(∂λ₊, ∂λ₋)`.
///
/// From `λ₊ + λ₋ = 1` and `λ₊λ₋ = det ρ` follows `∂λ₋ = ∂det/(λ₊ − λ₋)`,
/// which stays accurate when `λ₋` is tiny. Degenerate spectra fall back to
/// diagonal matrix elements of `∂ρ`.
pub(crate) fn eigenvalue_derivatives(
    gap: f64,
    vectors: &[[num_complex::Complex64; 2]; 2],
    d_rho: &Complex2x2,
    d_det: f64,
) -> [f64; 2] {
    if gap > 1e-8 {
        let d_minus = d_det / gap;
        [-d_minus, d_minus]
    } else {
        [
            d_rho.sandwich(vectors[0], vectors[0]).re,
            d_rho.sandwich(vectors[1], vectors[1]).re,
        ]
    }
}

/// QFI from the spectral decomposition:
/// `Σ_k (∂λ_k)²/λ_k + 4|⟨ψ₊|∂ρ|ψ₋⟩|²`.
pub fn qfi_eigen(rho: &DensityMatrix2, d_rho: &Complex2x2, d_det: f64) -> f64 {
    let eig = rho.eigen();
    qfi_spectral(&eig, eig.values[0] - eig.values[1], d_rho, d_det)
}

fn qfi_spectral(eig: &Eigen2, gap: f64, d_rho: &Complex2x2, d_det: f64) -> f64 {
    let dl = eigenvalue_derivatives(gap, &eig.vectors, d_rho, d_det);
    let mut h = 0.0;
    for k in 0..2 {
        let lam = eig.values[k];
        if lam > 0.0 {
            h += dl[k] * dl[k] / lam;
        } else if dl[k].abs() >= ZERO_DERIVATIVE {
            return f64::INFINITY;
        }
    }
    h + 4.0 * d_rho.sandwich(eig.vectors[0], eig.vectors[1]).norm_sqr()
}

/// QFI from the Bloch vector: `|∂r|² + (r·∂r)²/(1 − |r|²)`.
pub fn qfi_bloch(r: [f64; 3], dr: [f64; 3], defect: f64) -> f64 {
    let dr_sq = dr[0] * dr[0] + dr[1] * dr[1] + dr[2] * dr[2];
    let r_dr = r[0] * dr[0] + r[1] * dr[1] + r[2] * dr[2];
    if defect > 0.0 {
        dr_sq + r_dr * r_dr / defect
    } else if r_dr.abs() < ZERO_DERIVATIVE {
        dr_sq
    } else {
        f64::INFINITY
    }
}

/// QFI of a probe state, computed by both routes and cross-checked.
///
/// The eigen route uses [`ProbeState::spectrum`].
pub fn qfi_from_probe(probe: &ProbeState) -> Result<f64> {
    let (eig, gap) = probe.spectrum();
    let eigen = qfi_spectral(&eig, gap, &probe.d_rho(), probe.d_det());
    let bloch = qfi_bloch(probe.bloch, probe.d_bloch, probe.defect);
    let agree = if eigen.is_infinite() || bloch.is_infinite() {
        eigen == bloch
    } else {
        (eigen - bloch).abs() <= QFI_AGREEMENT * eigen.max(bloch) + f64::MIN_POSITIVE
    };
    if agree {
        Ok(eigen)
    } else {
        Err(Error::QfiInconsistent { eigen, bloch })
    }
}

/// Quantum Fisher information of β.
pub fn qfi(
    model: ModelId,
    beta: InverseTemperature,
    prep: QubitPrep,
    time: ProtocolTime,
) -> Result<f64> {
    qfi_from_probe(&probe(model, beta, prep, time))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimation::closed_form::{qfi_dispersive_opt, qfi_transverse};
    use crate::estimation::fisher::fisher_population;
    use crate::models::{pure_qubit_state, transverse_probe_displaced};
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
    fn transverse_examples() {
        for phi in [0.0, 1.0, 4.0] {
            let h = qfi(ModelId::Transverse, b(2.0), p(0.0, phi), t(0.5)).unwrap();
            let f = fisher_population(ModelId::Transverse, b(2.0), p(0.0, phi), t(0.5));
            assert!((h - f).abs() < 1e-14 * h);
            assert!((h - 8.826e-3).abs() < 1e-6);
        }
        for (beta, tau) in [(0.3, 0.4), (4.0, 1.9)] {
            let h = qfi(ModelId::Transverse, b(beta), p(FRAC_PI_2, 0.0), t(tau)).unwrap();
            assert!(h < 1e-30);
        }
    }

    #[test]
    fn dispersive_example() {
        let h = qfi(ModelId::Dispersive, b(3.0), QubitPrep::ground(), t(0.9)).unwrap();
        let closed = qfi_dispersive_opt(b(3.0), t(0.9));
        assert!((h - closed).abs() < 1e-12 * closed);
    }

    #[test]
    fn pure_constant_state() {
        let s = ProbeState::constant(pure_qubit_state(p(1.0, 1.0)));
        assert_eq!(qfi_from_probe(&s).unwrap(), 0.0);
        assert_eq!(
            qfi_bloch([0.0, 0.0, 1.0], [0.0, 0.0, 0.3], 0.0),
            f64::INFINITY
        );
        assert_eq!(
            qfi(ModelId::Dispersive, b(1.0), p(0.4, 0.2), t(0.0)).unwrap(),
            0.0
        );
    }

    proptest! {
        #[test]
        fn routes_agree_and_bound_fisher(beta in 0.1..20.0f64, theta in 0.0..PI, phi in 0.0..(2.0 * PI), tau in 0.0..PI) {
            for model in ModelId::ALL {
                let h = qfi(model, b(beta), p(theta, phi), t(tau));
                prop_assert!(h.is_ok(), "{:?} {:?}", model, h);
                let h = h.unwrap();
                let f = fisher_population(model, b(beta), p(theta, phi), t(tau));
                prop_assert!(f <= h + 1e-9);
            }
        }

        #[test]
        fn transverse_closed_form(beta in 0.1..20.0f64, theta in 0.0..PI, phi in 0.0..(2.0 * PI), tau in 0.0..3.0f64) {
            let h = qfi(ModelId::Transverse, b(beta), p(theta, phi), t(tau)).unwrap();
            let c = qfi_transverse(b(beta), p(theta, phi), t(tau));
            prop_assert!((h - c).abs() <= 1e-10 * c + 1e-300);
        }

        #[test]
        fn transverse_gauge_invariances(beta in 0.1..20.0f64, x in 0.0..PI, tau in 0.01..3.0f64) {
            let at_zero = qfi(ModelId::Transverse, b(beta), p(0.0, 0.0), t(tau)).unwrap();
            let phi_free = qfi(ModelId::Transverse, b(beta), p(0.0, 2.0 * x), t(tau)).unwrap();
            let theta_free = qfi(ModelId::Transverse, b(beta), p(x, FRAC_PI_2), t(tau)).unwrap();
            prop_assert!((at_zero - phi_free).abs() <= 1e-8 * at_zero);
            prop_assert!((at_zero - theta_free).abs() <= 1e-8 * at_zero);
        }

        #[test]
        fn displacement_invariance(beta in 0.1..20.0f64, theta in 0.0..PI, phi in 0.0..(2.0 * PI), tau in 0.0..3.0f64, alpha in -3.0..3.0f64) {
            let h0 = qfi(ModelId::Transverse, b(beta), p(theta, phi), t(tau)).unwrap();
            let s = transverse_probe_displaced(b(beta), p(theta, phi), t(tau), alpha).unwrap();
            let h = qfi_from_probe(&s).unwrap();
            prop_assert!((h - h0).abs() <= 1e-10 * h0.max(1e-300));
        }
    }
}
