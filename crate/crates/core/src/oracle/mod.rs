//! Brute-force reference computations: Gauss–Hermite averaging over the
//! oscillator quadrature, truncated Fock sums, exact detuned Jaynes–Cummings
//! evolution and finite-difference Fisher information.

mod dispersive_limit;
mod focksum;
mod full_jc;
mod grid;
mod numeric;
mod quadrature_state;

pub use dispersive_limit::{dispersive_limit_scan, DeltaScan, DeltaScanPoint, G_EFF_CANDIDATES};
pub use focksum::{probe_state_dispersive_focksum, FockTruncation, FOCK_MARGIN, MAX_FOCK_TAIL};
pub use full_jc::{full_jc_probe_state, manifold_propagator, FullJcParams, MAX_TOP_WEIGHT};
pub use grid::{quadrature_subgrid, standard_grid, GridPoint, GRID_SIDE};
pub use numeric::{
    default_step, fisher_population_numeric, fisher_population_numeric_with, qfi_numeric,
    qfi_numeric_with, DEFAULT_RELATIVE_STEP,
};
pub use quadrature_state::{
    probe_state_transverse_quadrature, DEFAULT_QUADRATURE_ORDER, MIN_QUADRATURE_ORDER,
};
