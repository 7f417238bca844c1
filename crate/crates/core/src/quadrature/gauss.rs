use std::f64::consts::PI;
use std::sync::OnceLock;

use super::{Domain, QuadRule};
use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on [−1, 1], ascending.
#[derive(Debug, Clone)]
pub struct GlUnit {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

const CACHED: usize = 512;
static CACHE: [OnceLock<GlUnit>; CACHED] = [const { OnceLock::new() }; CACHED];

/// Cached unit rule. Rules with `n < 512` are computed once per process.
pub fn gl_unit(n: usize) -> &'static GlUnit {
    assert!(n > 0 && n < CACHED, "gl_unit supports 1 ≤ n < {CACHED}");
    CACHE[n].get_or_init(|| compute(n))
}

/// Newton iteration on the three-term recurrence, seeded by Tricomi's
/// asymptotic node estimate.
fn compute(n: usize) -> GlUnit {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let k = (i + 1) as f64;
        let theta = PI * (4.0 * k - 1.0) / (4.0 * nf + 2.0);
        let mut x = (1.0 - (nf - 1.0) / (8.0 * nf * nf * nf)) * theta.cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                let (_, d) = legendre(n, x);
                dp = d;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    GlUnit { nodes, weights }
}

/// (P_n(x), P_n'(x)).
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// n-point Gauss–Legendre rule on [a, b].
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Result<QuadRule> {
    if n == 0 || n >= CACHED {
        return Err(Error::Config(format!("Gauss-Legendre needs 1 ≤ n < {CACHED}, got {n}")));
    }
    if !(a < b) {
        return Err(Error::Config(format!("Gauss-Legendre needs a < b, got [{a}, {b}]")));
    }
    let u = gl_unit(n);
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    Ok(QuadRule {
        nodes: u.nodes.iter().map(|x| c + h * x).collect(),
        weights: u.weights.iter().map(|w| h * w).collect(),
        domain: Domain::Interval { a, b },
        order: 2 * n,
    })
}
