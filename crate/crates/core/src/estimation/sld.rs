use serde::{Deserialize, Serialize};

use crate::models::{
    probe, DensityMatrix2, InverseTemperature, ModelId, ProbeState, ProtocolTime, QubitPrep,
};
use crate::qmath::{Complex2x2, Eigen2};

use super::qfi::eigenvalue_derivatives;

/// Eigenvalue below which the state counts as rank deficient.
pub const RANK_TOL: f64 = 1e-12;

/// Symmetric logarithmic derivative with its rank flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SldSolution {
    pub operator: Complex2x2,
    /// Smallest eigenvalue of ρ is below [`RANK_TOL`].
    pub rank_deficient: bool,
}

/// Solves `∂ρ = (Lρ + ρL)/2` in the eigenbasis of `ρ`.
///
/// Diagonal entries are `∂λ_k/λ_k`; an exact kernel direction gets 0.
pub fn sld_from_parts(rho: &DensityMatrix2, d_rho: &Complex2x2, d_det: f64) -> SldSolution {
    let eig = rho.eigen();
    sld_spectral(&eig, eig.values[0] - eig.values[1], d_rho, d_det)
}

fn sld_spectral(eig: &Eigen2, gap: f64, d_rho: &Complex2x2, d_det: f64) -> SldSolution {
    let dl = eigenvalue_derivatives(gap, &eig.vectors, d_rho, d_det);
    let [v0, v1] = eig.vectors;
    let mut l = Complex2x2::zero();
    for k in 0..2 {
        if eig.values[k] > 0.0 {
            let v = eig.vectors[k];
            l = l + Complex2x2::outer(v, v).scale(dl[k] / eig.values[k]);
        }
    }
    let m = d_rho.sandwich(v0, v1) * (2.0 / (eig.values[0] + eig.values[1]));
    l = l
        + Complex2x2::outer(v0, v1).scale_complex(m)
        + Complex2x2::outer(v1, v0).scale_complex(m.conj());
    SldSolution {
        operator: (l + l.adjoint()).scale(0.5),
        rank_deficient: eig.values[1] <= RANK_TOL,
    }
}

pub fn sld_from_probe(probe: &ProbeState) -> SldSolution {
    let (eig, gap) = probe.spectrum();
    sld_spectral(&eig, gap, &probe.d_rho(), probe.d_det())
}

/// Symmetric logarithmic derivative of the probe state with respect to β.
pub fn sld(
    model: ModelId,
    beta: InverseTemperature,
    prep: QubitPrep,
    time: ProtocolTime,
) -> Complex2x2 {
    sld_solution(model, beta, prep, time).operator
}

pub fn sld_solution(
    model: ModelId,
    beta: InverseTemperature,
    prep: QubitPrep,
    time: ProtocolTime,
) -> SldSolution {
    sld_from_probe(&probe(model, beta, prep, time))
}

/// Residuals of the SLD contract.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SldResiduals {
    /// `‖∂ρ − (Lρ + ρL)/2‖_max`
    pub lyapunov: f64,
    /// `|Tr[ρL]|`
    pub mean: f64,
    /// `Tr[ρL²]`
    pub second_moment: f64,
}

/// Residuals of the SLD contract. The moments are evaluated in the
/// eigenbasis of `ρ` with determinant-refined eigenvalues.
pub fn sld_residuals(rho: &DensityMatrix2, d_rho: &Complex2x2, l: &Complex2x2) -> SldResiduals {
    let r = *rho.matrix();
    let sym = (*l * r + r * *l).scale(0.5);
    let eig = rho.eigen();
    let mut mean = 0.0;
    let mut second_moment = 0.0;
    for k in 0..2 {
        let v = eig.vectors[k];
        let lv = l.apply(v);
        mean += eig.values[k] * l.sandwich(v, v).re;
        second_moment += eig.values[k] * (lv[0].norm_sqr() + lv[1].norm_sqr());
    }
    SldResiduals {
        lyapunov: d_rho.max_abs_diff(&sym),
        mean: mean.abs(),
        second_moment,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimation::closed_form::{dispersive_sld_coefficients, transverse_sld_reference};
    use crate::estimation::qfi::qfi_from_probe;
    use crate::models::{dispersive_probe, transverse_probe};
    use proptest::prelude::*;
    use std::f64::consts::PI;

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
    fn zero_time_gives_zero() {
        for model in ModelId::ALL {
            let s = sld_solution(model, b(1.0), QubitPrep::ground(), t(0.0));
            assert_eq!(s.operator.max_abs(), 0.0);
            assert!(s.rank_deficient);
        }
    }

    #[test]
    fn transverse_ground_preparation_is_diagonal() {
        for (beta, tau) in [(0.5, 0.3), (2.0, 0.5), (8.0, 1.4)] {
            let (c0, cz) = transverse_sld_reference(b(beta), t(tau));
            let l =
                sld(ModelId::Transverse, b(beta), QubitPrep::ground(), t(tau)).pauli_coefficients();
            assert!((l[0] - c0).abs() <= 1e-12 * c0.abs());
            assert!(l[1].abs() + l[2].abs() < 1e-15);
            // basis with |0⟩ on top: the σ_z coefficient is positive at θ = 0
            assert!((l[3] + cz).abs() <= 1e-12 * cz.abs());
            let excited =
                sld(ModelId::Transverse, b(beta), p(PI, 0.0), t(tau)).pauli_coefficients();
            assert!((excited[0] - c0).abs() <= 1e-12 * c0.abs());
            assert!((excited[3] - cz).abs() <= 1e-12 * cz.abs());
        }
    }

    #[test]
    fn dispersive_ground_preparation_coefficients() {
        for (beta, tau) in [(1.0, 0.7), (3.0, 2.0), (10.0, 0.4)] {
            let probe = dispersive_probe(b(beta), QubitPrep::ground(), t(tau));
            let l = sld_from_probe(&probe).operator.pauli_coefficients();
            let n = (probe.bloch[1].powi(2) + probe.bloch[2].powi(2)).sqrt();
            let (ry, rz) = (probe.bloch[1] / n, probe.bloch[2] / n);
            let along = l[2] * ry + l[3] * rz;
            let across = -(l[2] * -rz + l[3] * ry);
            let c = dispersive_sld_coefficients(b(beta), t(tau));
            assert!((l[0] - c.l0).abs() < 1e-12);
            assert!((along - c.lz).abs() < 1e-12);
            assert!((across - c.lx).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn contracts(beta in 0.1..20.0f64, theta in 0.0..PI, phi in 0.0..(2.0 * PI), tau in 0.01..PI) {
            for probe in [
                transverse_probe(b(beta), p(theta, phi), t(tau)),
                dispersive_probe(b(beta), p(theta, phi), t(tau)),
            ] {
                let s = sld_from_probe(&probe);
                prop_assert!(s.operator.hermitian_deviation() == 0.0);
                let res = sld_residuals(&probe.rho, &probe.d_rho(), &s.operator);
                let h = qfi_from_probe(&probe).unwrap();
                prop_assert!(res.lyapunov <= 1e-10, "{:?}", res);
                prop_assert!(res.mean <= 1e-10, "{:?}", res);
                if h > 1e-12 {
                    prop_assert!((res.second_moment / h - 1.0).abs() <= 1e-8, "{:?} vs {}", res, h);
                }
            }
        }
    }
}
