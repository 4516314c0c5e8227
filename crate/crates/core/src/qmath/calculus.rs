/// Five-point central difference estimate of `f′(x)`.
pub fn finite_diff(mut f: impl FnMut(f64) -> f64, x: f64, h: f64) -> f64 {
    let f_m2 = f(x - 2.0 * h);
    let f_m1 = f(x - h);
    let f_p1 = f(x + h);
    let f_p2 = f(x + 2.0 * h);
    (f_m2 - 8.0 * f_m1 + 8.0 * f_p1 - f_p2) / (12.0 * h)
}

/// Result of [`golden_section_max`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenMax {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Golden-section search for a maximum of a unimodal `f` on `[lo, hi]`.
///
/// Stops when the bracket is narrower than `tol` or after `max_iter` steps.
pub fn golden_section_max(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: f64,
    max_iter: usize,
) -> GoldenMax {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iterations = 0;
    while b - a > tol && iterations < max_iter {
        iterations += 1;
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let (x, value) = if fc >= fd { (c, fc) } else { (d, fd) };
    GoldenMax {
        x,
        value,
        iterations,
    }
}
