use super::{gl_unit, Domain, QuadRule};
use crate::error::{Error, Result};

/// Rule for `∫_{−∞}^{∞} f(z) dz`: `n_inner` Gauss–Legendre nodes on
/// `[−l, l]` plus `n_tail` nodes per tail under `z = ±l/s`, `s ∈ (0, 1]`.
///
/// The tail map turns algebraic decay `f ~ z^{−2}` into a bounded integrand,
/// so slowly decaying integrands need no truncation.
pub fn real_line_rule(n_inner: usize, l: f64, n_tail: usize) -> Result<QuadRule> {
    if n_inner == 0 || n_tail == 0 || !(l > 0.0) {
        return Err(Error::Config(format!(
            "real-line rule needs positive sizes, got n_inner={n_inner}, l={l}, n_tail={n_tail}"
        )));
    }
    let inner = gl_unit(n_inner);
    let tail = gl_unit(n_tail);
    let mut nodes = Vec::with_capacity(n_inner + 2 * n_tail);
    let mut weights = Vec::with_capacity(nodes.capacity());
    for (x, w) in inner.nodes.iter().zip(&inner.weights) {
        nodes.push(l * x);
        weights.push(l * w);
    }
    for (x, w) in tail.nodes.iter().zip(&tail.weights) {
        let s = 0.5 * (x + 1.0);
        let jac = 0.5 * w * l / (s * s);
        nodes.push(l / s);
        weights.push(jac);
        nodes.push(-l / s);
        weights.push(jac);
    }
    Ok(QuadRule { nodes, weights, domain: Domain::RealLine, order: 2 * n_inner })
}
