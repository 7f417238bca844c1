//! Quadrature rules: Gauss–Legendre panels, Alpert's hybrid
//! Gauss-trapezoidal rules for periodic log-singular integrands, and a
//! mapped rule for the whole real line.

mod alpert;
mod gauss;
mod line;

pub use alpert::{alpert_log_rule, AlpertOrder, AlpertTable};
pub use gauss::{gauss_legendre, gl_unit, GlUnit};
pub use line::real_line_rule;

use crate::error::{Error, Result};

/// Where a rule's nodes live.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Interval { a: f64, b: f64 },
    /// `[0, period)` with a singularity at `singular_at` that is never sampled.
    PeriodicPunctured { period: f64, singular_at: f64 },
    RealLine,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub domain: Domain,
    /// Nominal order of accuracy (polynomial degree + 1 for Gauss rules).
    pub order: usize,
}

impl QuadRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

/// `Σ wᵢ f(xᵢ)`, refusing to sum non-finite samples.
pub fn apply_rule<F: FnMut(f64) -> f64>(rule: &QuadRule, mut f: F) -> Result<f64> {
    let mut acc = 0.0;
    for (index, (x, w)) in rule.iter().enumerate() {
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::NonFinite { index, node: x });
        }
        acc += w * v;
    }
    Ok(acc)
}
