use num_complex::Complex64;

/// `coth(β/2) = 1 + 2/(e^β − 1)`.
pub fn coth_half(beta: f64) -> f64 {
    1.0 + 2.0 / beta.exp_m1()
}

/// `csch²(β/2) = 4e^{−β}/(1 − e^{−β})²`.
pub fn csch_half_sq(beta: f64) -> f64 {
    let q = (-beta).exp();
    let d = -(-beta).exp_m1();
    4.0 * q / (d * d)
}

/// `sin(x)/x` with `sinc(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// `Σ_n p_n e^{i n·phase}` over the thermal distribution
/// `p_n = (1 − e^{−β}) e^{−nβ}`.
pub fn thermal_phase_sum(beta: f64, phase: f64) -> Complex64 {
    let q = (-beta).exp();
    let one_minus_q = -(-beta).exp_m1();
    let w = Complex64::from_polar(1.0, phase);
    Complex64::from(one_minus_q) / (Complex64::from(1.0) - w * q)
}

/// `∂_β` of [`thermal_phase_sum`].
pub fn thermal_phase_sum_derivative(beta: f64, phase: f64) -> Complex64 {
    let q = (-beta).exp();
    let w = Complex64::from_polar(1.0, phase);
    let d = Complex64::from(1.0) - w * q;
    -(w - 1.0) * q / (d * d)
}
