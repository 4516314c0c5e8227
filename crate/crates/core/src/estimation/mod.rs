//! Fisher information, quantum Fisher information, symmetric logarithmic
//! derivatives and protocol optimization.

mod closed_form;
mod deficit;
mod fisher;
mod optimize;
mod povm;
mod qfi;
mod sld;

pub use closed_form::{
    dispersive_sld_asymptotes, dispersive_sld_coefficients, fisher_dispersive_opt,
    fisher_transverse_population, optimal_decoherence_exponent, qfi_dispersive_opt, qfi_transverse,
    tau_opt_transverse, transverse_sld_reference, DispersiveSldCoefficients,
};
pub use deficit::{fi_deficit, DISPERSIVE_NODE_TOL};
pub use fisher::{fisher_from_parts, fisher_from_probe, fisher_information, fisher_population};
pub use optimize::{optimize_protocol, optimize_time, EstimationReport, Optimum};
pub use povm::{outcome_probabilities, Povm2, MAX_OUTCOMES};
pub use qfi::{qfi, qfi_bloch, qfi_eigen, qfi_from_probe, QFI_AGREEMENT};
pub use sld::{
    sld, sld_from_parts, sld_from_probe, sld_residuals, sld_solution, SldResiduals, SldSolution,
    RANK_TOL,
};
