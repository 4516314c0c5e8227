use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{
    pure_qubit_state, DensityMatrix2, InverseTemperature, ProtocolTime, QubitPrep,
};
use crate::qmath::Complex2x2;

use super::quadrature_state::x_rotation;

/// Largest tail accepted by [`probe_state_dispersive_focksum`].
pub const MAX_FOCK_TAIL: f64 = 1e-15;
/// Extra levels added on top of the tail estimate.
pub const FOCK_MARGIN: usize = 10;

/// Fock levels `0..dim` retained from the thermal distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockTruncation {
    pub dim: usize,
    /// `Σ_{n ≥ dim} p_n = e^{−β·dim}`
    pub tail_bound: f64,
}

impl FockTruncation {
    pub fn new(beta: InverseTemperature, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("dim", 0.0, "dim >= 1"));
        }
        Ok(Self {
            dim,
            tail_bound: (-beta.value() * dim as f64).exp(),
        })
    }

    /// `N = ⌈ln(1/ε)/β⌉ + 10`.
    pub fn for_tail(beta: InverseTemperature, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::domain("eps", eps, "0 < eps < 1"));
        }
        let n = ((1.0 / eps).ln() / beta.value()).ceil() as usize + FOCK_MARGIN;
        Self::new(beta, n)
    }

    /// Thermal weight of the two highest retained levels.
    pub fn top_weight(&self, beta: InverseTemperature) -> f64 {
        (self.dim.saturating_sub(2)..self.dim)
            .map(|n| beta.fock_weight(n))
            .sum()
    }
}

/// Dispersive probe state by direct summation over Fock levels:
/// `Σ_n p_n e^{−iτnσ_x}|ψ⟩⟨ψ|e^{iτnσ_x}`, renormalized by the retained weight.
pub fn probe_state_dispersive_focksum(
    beta: InverseTemperature,
    prep: QubitPrep,
    time: ProtocolTime,
    trunc: FockTruncation,
) -> Result<DensityMatrix2> {
    if trunc.tail_bound > MAX_FOCK_TAIL {
        return Err(Error::TruncationTooSmall {
            dim: trunc.dim,
            weight: trunc.tail_bound,
        });
    }
    let rho0 = *pure_qubit_state(prep).matrix();
    let tau = time.value();
    let mut acc = Complex2x2::zero();
    let mut weight = 0.0;
    for n in (0..trunc.dim).rev() {
        let p = beta.fock_weight(n);
        acc = acc + rho0.conjugate_by(&x_rotation(tau * n as f64)).scale(p);
        weight += p;
    }
    let rho = acc.scale(1.0 / weight);
    DensityMatrix2::new((rho + rho.adjoint()).scale(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::probe_state_dispersive;
    use std::f64::consts::{FRAC_PI_2, LN_2, PI};

    fn b(x: f64) -> InverseTemperature {
        InverseTemperature::new(x).unwrap()
    }
    fn t(x: f64) -> ProtocolTime {
        ProtocolTime::new(x).unwrap()
    }

    #[test]
    fn truncation_rule() {
        let tr = FockTruncation::for_tail(b(1.0), 1e-15).unwrap();
        assert_eq!(tr.dim, 35 + FOCK_MARGIN);
        assert!(tr.tail_bound <= 1e-15);
        assert!(tr.top_weight(b(1.0)) < 1e-10);
    }

    #[test]
    fn examples() {
        let prep = QubitPrep::new(0.3, 0.2).unwrap();
        let tr = FockTruncation::for_tail(b(1.0), 1e-15).unwrap();
        let rho = probe_state_dispersive_focksum(b(1.0), prep, t(0.0), tr).unwrap();
        assert!(rho.trace_distance(&pure_qubit_state(prep)) < 1e-15);

        let tr = FockTruncation::for_tail(b(LN_2), 1e-15).unwrap();
        let rho =
            probe_state_dispersive_focksum(b(LN_2), QubitPrep::ground(), t(FRAC_PI_2), tr).unwrap();
        assert!((rho.populations()[0] - 2.0 / 3.0).abs() < 1e-15);

        let prep = QubitPrep::new(PI / 4.0, PI / 3.0).unwrap();
        let tr = FockTruncation::for_tail(b(1.0), 1e-15).unwrap();
        let rho = probe_state_dispersive_focksum(b(1.0), prep, t(0.7), tr).unwrap();
        assert!(rho.trace_distance(&probe_state_dispersive(b(1.0), prep, t(0.7))) < 1e-13);
    }

    #[test]
    fn rejects_short_truncation() {
        let tr = FockTruncation::new(b(1.0), 5).unwrap();
        assert!(probe_state_dispersive_focksum(b(1.0), QubitPrep::ground(), t(0.4), tr).is_err());
    }

    #[test]
    fn doubling_the_cutoff_changes_nothing() {
        let prep = QubitPrep::new(1.2, 5.0).unwrap();
        for beta in [0.1, 1.0, 8.0] {
            let tr = FockTruncation::for_tail(b(beta), 1e-15).unwrap();
            let wide = FockTruncation::new(b(beta), 2 * tr.dim).unwrap();
            let a = probe_state_dispersive_focksum(b(beta), prep, t(1.1), tr).unwrap();
            let c = probe_state_dispersive_focksum(b(beta), prep, t(1.1), wide).unwrap();
            assert!(a.trace_distance(&c) <= 10.0 * tr.tail_bound + 1e-15);
        }
    }
}
