//! Parameter types, qubit states and the closed-form probe states of the
//! transverse (`X ⊗ σ_x`) and dispersive (`a†a ⊗ σ_x`) couplings.

mod dispersive;
mod state;
mod transverse;
mod types;

pub use dispersive::{
    dispersive_kernel, dispersive_probe, probe_state_dispersive, DispersiveKernel,
};
pub use state::{pure_qubit_state, DensityMatrix2, ProbeState, STATE_TOL};
pub use transverse::{
    decoherence_exponent, probe_state_transverse, probe_state_transverse_displaced,
    transverse_probe, transverse_probe_displaced, transverse_state_for_zeta,
};
pub use types::{InverseTemperature, ModelId, ProtocolTime, QubitPrep};

/// Closed-form probe state of `model` with its analytic β-derivative.
pub fn probe(
    model: ModelId,
    beta: InverseTemperature,
    prep: QubitPrep,
    time: ProtocolTime,
) -> ProbeState {
    match model {
        ModelId::Transverse => transverse_probe(beta, prep, time),
        ModelId::Dispersive => dispersive_probe(beta, prep, time),
    }
}

/// Closed-form probe state of `model`.
pub fn probe_state(
    model: ModelId,
    beta: InverseTemperature,
    prep: QubitPrep,
    time: ProtocolTime,
) -> DensityMatrix2 {
    probe(model, beta, prep, time).rho
}
