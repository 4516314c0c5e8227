use crate::error::{Error, Result};
use crate::estimation::qfi_eigen;
use crate::models::{
    probe_state, DensityMatrix2, InverseTemperature, ModelId, ProtocolTime, QubitPrep,
};
use crate::qmath::Complex2x2;

/// Default finite-difference step relative to β.
pub const DEFAULT_RELATIVE_STEP: f64 = 1e-3;

/// `h = 1e−3·β`.
pub fn default_step(beta: InverseTemperature) -> f64 {
    DEFAULT_RELATIVE_STEP * beta.value()
}

fn check_step(beta: InverseTemperature, h: f64) -> Result<()> {
    let scale = beta.value().max(1.0);
    if !(h >= 1e-7 * scale && h <= 1e-3 * scale) {
        return Err(Error::domain(
            "h",
            h,
            "1e-7 max(1, beta) <= h <= 1e-3 max(1, beta)",
        ));
    }
    if beta.value() - 2.0 * h <= 0.0 {
        return Err(Error::domain("h", h, "beta - 2h > 0"));
    }
    Ok(())
}

/// Evaluates a state generator at the five stencil points `β + k·h`,
/// `k = −2..=2`.
fn stencil<F>(state: &F, beta: InverseTemperature, h: f64) -> Result<[DensityMatrix2; 5]>
where
    F: Fn(InverseTemperature) -> Result<DensityMatrix2>,
{
    let at = |k: f64| InverseTemperature::new(beta.value() + k * h).and_then(state);
    Ok([at(-2.0)?, at(-1.0)?, at(0.0)?, at(1.0)?, at(2.0)?])
}

fn five_point(f: [f64; 5], h: f64) -> f64 {
    (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h)
}

/// QFI of any state generator with `∂_βρ` and `∂_β det ρ` from five-point
/// central differences.
///
/// The trace-zero structure of `∂_βρ` is used to difference only the smaller
/// population, which keeps relative accuracy when the other is close to 1.
/// Likewise `∂_β det ρ` comes from the determinant itself for nearly pure
/// states and from the Bloch length `|r|` for nearly mixed ones.
pub fn qfi_numeric_with<F>(state: F, beta: InverseTemperature, h: f64) -> Result<f64>
where
    F: Fn(InverseTemperature) -> Result<DensityMatrix2>,
{
    check_step(beta, h)?;
    let s = stencil(&state, beta, h)?;
    let rho = s[2];
    let small = if rho.populations()[1] <= rho.populations()[0] {
        1
    } else {
        0
    };
    let d_small = five_point(s.map(|r| r.populations()[small]), h);
    let d_re = five_point(s.map(|r| r.get(0, 1).re), h);
    let d_im = five_point(s.map(|r| r.get(0, 1).im), h);
    let d_det = if rho.det() < 0.125 {
        five_point(s.map(|r| r.det()), h)
    } else {
        -0.5 * bloch_length(&rho) * five_point(s.map(|r| bloch_length(&r)), h)
    };
    let off = num_complex::Complex64::new(d_re, d_im);
    let diag = if small == 1 {
        [-d_small, d_small]
    } else {
        [d_small, -d_small]
    };
    let d_rho = Complex2x2::new(diag[0].into(), off, off.conj(), diag[1].into());
    Ok(qfi_eigen(&rho, &d_rho, d_det))
}

fn bloch_length(rho: &DensityMatrix2) -> f64 {
    let [p0, p1] = rho.populations();
    (p0 - p1).hypot(2.0 * rho.get(0, 1).norm())
}

/// QFI of a closed-form model with finite-difference `∂_β`.
pub fn qfi_numeric(
    model: ModelId,
    beta: InverseTemperature,
    prep: QubitPrep,
    time: ProtocolTime,
    h: f64,
) -> Result<f64> {
    qfi_numeric_with(|b| Ok(probe_state(model, b, prep, time)), beta, h)
}

/// Population Fisher information with `∂_β p` from five-point differences.
pub fn fisher_population_numeric_with<F>(state: F, beta: InverseTemperature, h: f64) -> Result<f64>
where
    F: Fn(InverseTemperature) -> Result<DensityMatrix2>,
{
    check_step(beta, h)?;
    let s = stencil(&state, beta, h)?;
    let [p0, p1] = s[2].populations();
    let small = if p1 <= p0 { 1 } else { 0 };
    let d = five_point(s.map(|r| r.populations()[small]), h);
    if p0.min(p1) <= 0.0 {
        return Ok(if d.abs() < 1e-12 { 0.0 } else { f64::INFINITY });
    }
    Ok(d * d / (p0 * p1))
}

pub fn fisher_population_numeric(
    model: ModelId,
    beta: InverseTemperature,
    prep: QubitPrep,
    time: ProtocolTime,
    h: f64,
) -> Result<f64> {
    fisher_population_numeric_with(|b| Ok(probe_state(model, b, prep, time)), beta, h)
}
