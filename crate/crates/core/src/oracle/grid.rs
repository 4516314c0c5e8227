use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::models::{InverseTemperature, ProtocolTime, QubitPrep};

/// Points per axis of the standard validation grid.
pub const GRID_SIDE: usize = 10;

/// One `(β, θ, φ, τ)` point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub beta: InverseTemperature,
    pub prep: QubitPrep,
    pub time: ProtocolTime,
}

/// `β ∈ [0.1, 20]`, `θ ∈ [0, π]` and `τ ∈ [0, π]` with endpoints, `φ ∈ [0, 2π)` without.
///
/// `stride > 1` keeps every `stride`-th point in lattice order.
pub fn standard_grid(stride: usize) -> Vec<GridPoint> {
    let n = GRID_SIDE;
    let stride = stride.max(1);
    let mut out = Vec::with_capacity(n.pow(4) / stride + 1);
    let mut index = 0usize;
    for i in 0..n {
        let beta = InverseTemperature::new(0.1 + (20.0 - 0.1) * i as f64 / (n - 1) as f64)
            .expect("grid beta");
        for j in 0..n {
            for k in 0..n {
                let prep = QubitPrep::new(
                    PI * j as f64 / (n - 1) as f64,
                    2.0 * PI * k as f64 / n as f64,
                )
                .expect("grid angles");
                for l in 0..n {
                    if index % stride == 0 {
                        let time =
                            ProtocolTime::new(PI * l as f64 / (n - 1) as f64).expect("grid tau");
                        out.push(GridPoint { beta, prep, time });
                    }
                    index += 1;
                }
            }
        }
    }
    out
}

/// Subset where the 128-node quadrature oracle is accurate: `β ≥ 0.5`, `τ ≤ 2`.
pub fn quadrature_subgrid(points: &[GridPoint]) -> Vec<GridPoint> {
    points
        .iter()
        .copied()
        .filter(|p| p.beta.value() >= 0.5 && p.time.value() <= 2.0)
        .collect()
}
