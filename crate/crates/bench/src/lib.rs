//! Shared fixtures for the benchmarks.

use qtherm::{InverseTemperature, ModelId, ProtocolTime, QubitPrep};

/// A single evaluation point.
#[derive(Debug, Clone, Copy)]
pub struct Point {
    pub model: ModelId,
    pub beta: InverseTemperature,
    pub prep: QubitPrep,
    pub time: ProtocolTime,
}

impl Point {
    pub fn new(model: ModelId, beta: f64, theta: f64, phi: f64, tau: f64) -> Self {
        Point {
            model,
            beta: InverseTemperature::new(beta).expect("positive beta"),
            prep: QubitPrep::new(theta, phi).expect("valid angles"),
            time: ProtocolTime::new(tau).expect("nonnegative time"),
        }
    }
}

/// Representative points for each model, from hot to cold.
pub fn sample_points(model: ModelId) -> Vec<Point> {
    [
        (0.3, 0.0, 0.0, 0.4),
        (1.0, 0.7, 0.3, 0.9),
        (2.0, 1.9, 4.0, 1.6),
        (10.0, 0.0, 0.0, 2.4),
    ]
    .iter()
    .map(|&(b, th, ph, t)| Point::new(model, b, th, ph, t))
    .collect()
}
