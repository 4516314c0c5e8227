use crate::error::{Error, Result};
use crate::models::{InverseTemperature, ModelId, ProtocolTime, QubitPrep};

use super::fisher::fisher_population;
use super::qfi::qfi;

/// `|sin τ|` below which the dispersive probe carries no information.
pub const DISPERSIVE_NODE_TOL: f64 = 1e-10;

/// `[H − F]/H` at the ground preparation `θ = 0`, with `F` the population
/// Fisher information. Undefined where the QFI vanishes: `τ = 0` for the
/// transverse model and `τ ∈ πℤ` for the dispersive one.
pub fn fi_deficit(model: ModelId, beta: InverseTemperature, time: ProtocolTime) -> Result<f64> {
    let prep = QubitPrep::ground();
    let h = qfi(model, beta, prep, time)?;
    let node = match model {
        ModelId::Transverse => time.value() == 0.0,
        ModelId::Dispersive => time.value().sin().abs() < DISPERSIVE_NODE_TOL,
    };
    if node || !(h > 0.0) || h.is_infinite() {
        return Err(Error::UndefinedDeficit(h));
    }
    let f = fisher_population(model, beta, prep, time);
    let d = (h - f) / h;
    Ok(if (-1e-12..0.0).contains(&d) { 0.0 } else { d })
}
