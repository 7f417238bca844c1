use crate::error::{Error, Result};
use crate::kernels::lambda_functions_unchecked;
use crate::quadrature::gl_unit;

/// λ beyond which `e^{−λ}` terms are dropped from the time integrand: the
/// lag range `u < r²/(4·CUT_LAMBDA)` then only carries smooth algebraic terms.
pub const CUT_LAMBDA: f64 = 50.0;

/// Gauss nodes used on lag ranges where the integrand is smooth in `u` itself.
pub const PLAIN_NODES: usize = 10;

/// The four transformed near-part time integrals at distance `|r|`:
/// with `λ = (|r|²/4) e^{−z}`,
/// `I₁ = ∫ e^{−λ} dz`, `I₂ = ∫ e^{−λ} e^{−z} dz`, `I₃ = ∫ φ₁(λ) dz`,
/// `I₄ = ∫ φ₂(λ) e^{−z} dz`, all over `z ∈ [ln ε, ln δ]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearTimeIntegrals {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: f64,
}

pub fn near_time_integrals(dist: f64, eps: f64, delta: f64, n: usize) -> Result<NearTimeIntegrals> {
    if !(eps > 0.0 && eps < delta) {
        return Err(Error::Config(format!("need 0 < eps < delta, got eps={eps}, delta={delta}")));
    }
    if n == 0 {
        return Err(Error::Config("need at least one node".into()));
    }
    let (za, zb) = (eps.ln(), delta.ln());
    let (c, h) = (0.5 * (za + zb), 0.5 * (zb - za));
    let g = gl_unit(n);
    let q = 0.25 * dist * dist;
    let mut out = NearTimeIntegrals { i1: 0.0, i2: 0.0, i3: 0.0, i4: 0.0 };
    for (x, w) in g.nodes.iter().zip(&g.weights) {
        let z = c + h * x;
        let ez = (-z).exp();
        let lf = lambda_functions_unchecked(q * ez);
        let w = w * h;
        out.i1 += w * lf.exp_neg;
        out.i2 += w * lf.exp_neg * ez;
        out.i3 += w * lf.phi1;
        out.i4 += w * lf.phi2 * ez;
    }
    Ok(out)
}

/// Quadrature in the lag `u = t − τ` over a local window `[u_lo, u_hi]`.
///
/// The window is split at `breaks` (lags where the density's interpolation
/// stencil changes). On each piece, lags with `λ ≥ CUT_LAMBDA` for every
/// possible source distance get a plain Gauss rule in `u`; the rest use
/// Gauss–Legendre in `z = ln u`, with node count proportional to the
/// z-length at `z_density` nodes per unit.
#[derive(Debug, Clone)]
pub struct LocalTimeRule {
    u_lo: f64,
    u_hi: f64,
    breaks: Vec<f64>,
    z_density: f64,
    /// Nodes for sources that may touch the target (no plain-Gauss part);
    /// shared by most sources close to the target.
    touching: Vec<(f64, f64)>,
}

impl LocalTimeRule {
    pub const MIN_Z_NODES: usize = 6;

    pub fn new(u_lo: f64, u_hi: f64, breaks: Vec<f64>, z_density: f64) -> Self {
        let mut rule = LocalTimeRule { u_lo, u_hi, breaks, z_density, touching: Vec::new() };
        if u_lo > 0.0 {
            let mut t = Vec::new();
            rule.fill(0.0, &mut t);
            rule.touching = t;
        }
        rule
    }

    pub fn window(&self) -> (f64, f64) {
        (self.u_lo, self.u_hi)
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    /// Gauss nodes per unit length in `ln u`.
    pub fn z_density(&self) -> f64 {
        self.z_density
    }

    /// Fill `out` with `(u, weight)` pairs for a source whose distance to
    /// the target stays above `r_low` throughout the window.
    pub fn nodes(&self, r_low: f64, out: &mut Vec<(f64, f64)>) {
        if self.is_touching(r_low) {
            out.clear();
            out.extend_from_slice(&self.touching);
            return;
        }
        self.fill(r_low, out);
    }

    /// Whether `nodes(r_low)` is the shared rule [`Self::touching_nodes`].
    pub fn is_touching(&self, r_low: f64) -> bool {
        self.u_lo > 0.0 && r_low * r_low / (4.0 * CUT_LAMBDA) <= self.u_lo
    }

    pub fn touching_nodes(&self) -> &[(f64, f64)] {
        &self.touching
    }

    fn fill(&self, r_low: f64, out: &mut Vec<(f64, f64)>) {
        out.clear();
        let mut a = self.u_lo;
        for &b in self.breaks.iter().chain(std::iter::once(&self.u_hi)) {
            if b > a {
                self.segment(a, b, r_low, out);
                a = b;
            }
        }
    }

    fn segment(&self, a: f64, b: f64, r_low: f64, out: &mut Vec<(f64, f64)>) {
        let u_cut = r_low * r_low / (4.0 * CUT_LAMBDA);
        if u_cut >= b {
            push_gl(PLAIN_NODES, a, b, out);
            return;
        }
        let za = if u_cut > a {
            push_gl(PLAIN_NODES, a, u_cut, out);
            u_cut.ln()
        } else {
            a.ln()
        };
        let zb = b.ln();
        let n = ((self.z_density * (zb - za)).ceil() as usize).max(Self::MIN_Z_NODES);
        let g = gl_unit(n);
        let (c, h) = (0.5 * (za + zb), 0.5 * (zb - za));
        for (x, w) in g.nodes.iter().zip(&g.weights) {
            let u = (c + h * x).exp();
            out.push((u, w * h * u));
        }
    }
}

fn push_gl(n: usize, a: f64, b: f64, out: &mut Vec<(f64, f64)>) {
    let g = gl_unit(n);
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    for (x, w) in g.nodes.iter().zip(&g.weights) {
        out.push((c + h * x, w * h));
    }
}
