use std::sync::OnceLock;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_GAUSS_HERMITE_ORDER: usize = 512;

/// Nodes and weights of an interpolatory quadrature rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub order: usize,
}

impl QuadratureRule {
    /// `Σ w_i f(x_i)`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Orthonormal Hermite values `p̃_{n−1}(x), p̃_n(x)` and `ln` of the common
/// scale factor, together with `Σ_{k<n} p̃_k(x)²` in the same scale.
fn hermite_orthonormal(n: usize, x: f64) -> (f64, f64, f64, f64) {
    const RESCALE: f64 = 1e120;
    let mut prev = 0.0;
    let mut cur = std::f64::consts::PI.powf(-0.25);
    let mut sum_sq = 0.0;
    let mut log_scale = 0.0;
    for k in 0..n {
        sum_sq += cur * cur;
        let kf = k as f64;
        let next = x * (2.0 / (kf + 1.0)).sqrt() * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            prev /= RESCALE;
            cur /= RESCALE;
            sum_sq /= RESCALE * RESCALE;
            log_scale += RESCALE.ln();
        }
    }
    (prev, cur, sum_sq, log_scale)
}

/// Gauss–Hermite rule for the weight `e^{−x²}` on the real line.
///
/// Nodes come from the symmetric Jacobi matrix, are polished by Newton steps
/// on the orthonormal recurrence, and weights are Christoffel numbers. The
/// outermost weights of very high orders underflow to zero.
pub fn gauss_hermite_rule(order: usize) -> Result<QuadratureRule> {
    if order == 0 || order > MAX_GAUSS_HERMITE_ORDER {
        return Err(Error::domain("order", order as f64, "1 <= order <= 512"));
    }
    let n = order;
    let jacobi = DMatrix::from_fn(n, n, |i, j| {
        if i + 1 == j || j + 1 == i {
            (i.max(j) as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    });
    let mut nodes: Vec<f64> = SymmetricEigen::new(jacobi)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    nodes.sort_by(f64::total_cmp);

    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (pm1, p, _, _) = hermite_orthonormal(n, *x);
            let dp = (2.0 * n as f64).sqrt() * pm1;
            if dp == 0.0 {
                break;
            }
            *x -= p / dp;
        }
    }
    // Exact symmetry about the origin.
    for i in 0..n / 2 {
        let m = 0.5 * (nodes[n - 1 - i] - nodes[i]);
        nodes[i] = -m;
        nodes[n - 1 - i] = m;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    let weights = nodes
        .iter()
        .map(|&x| {
            let (_, _, sum_sq, log_scale) = hermite_orthonormal(n, x);
            (-2.0 * log_scale).exp() / sum_sq
        })
        .collect();
    Ok(QuadratureRule {
        nodes,
        weights,
        order,
    })
}

/// Process-wide memoized [`gauss_hermite_rule`].
pub fn gauss_hermite_rule_cached(order: usize) -> Result<&'static QuadratureRule> {
    static CACHE: [OnceLock<QuadratureRule>; MAX_GAUSS_HERMITE_ORDER + 1] =
        [const { OnceLock::new() }; MAX_GAUSS_HERMITE_ORDER + 1];
    if order == 0 || order > MAX_GAUSS_HERMITE_ORDER {
        return gauss_hermite_rule(order).map(|_| unreachable!());
    }
    Ok(CACHE[order].get_or_init(|| gauss_hermite_rule(order).expect("order in range")))
}
