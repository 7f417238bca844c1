//! The history part `∫₀^{t−δ} ∫_Γ(τ) K φ ds dτ`, where the kernel is smooth.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::{DensityHistory, LayerKind};
use crate::error::{Error, Result};
use crate::geometry::MovingBoundary;
use crate::kernels::{dlp_kernel_unchecked, stokeslet_unchecked};
use crate::linalg::Vec2;
use crate::quadrature::gl_unit;

/// Panel rule for the history integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistoryConfig {
    /// Gauss nodes per time step on panels far from `t`.
    pub min_nodes: usize,
    /// Target relative accuracy used to add nodes on panels close to `t`,
    /// where the kernel's `1/(t−τ)` behaviour is least resolved.
    pub tol: f64,
}

impl Default for HistoryConfig {
    fn default() -> Self {
        HistoryConfig { min_nodes: 4, tol: 1e-14 }
    }
}

impl HistoryConfig {
    /// Nodes for a panel of half-length `half` centred at lag `center`:
    /// enough for a pole at lag 0 given the Bernstein ellipse through it.
    pub fn nodes_for(&self, center: f64, half: f64) -> usize {
        let beta = center / half;
        let rho = beta + (beta * beta - 1.0).max(0.0).sqrt();
        let n = if rho > 1.0 { ((1.0 / self.tol).ln() / (2.0 * rho.ln())).ceil() as usize } else { 64 };
        n.clamp(self.min_nodes, 64)
    }
}

/// History contribution at arbitrary points.
///
/// `levels` are density samples on an equispaced θ grid of any even size
/// (the history grid itself, or an upsampled copy for off-surface targets),
/// stored at `t_j = j·dt` and interpolated in time with order `order`.
#[allow(clippy::too_many_arguments)]
pub fn history_eval(
    b: &dyn MovingBoundary,
    levels: &[Vec<Vec2>],
    dt: f64,
    order: usize,
    t: f64,
    delta: f64,
    targets: &[Vec2],
    kind: LayerKind,
    cfg: &HistoryConfig,
) -> Result<Vec<Vec2>> {
    let mut out = vec![Vec2::ZERO; targets.len()];
    let t_end = t - delta;
    if t_end <= 0.0 || levels.is_empty() {
        return Ok(out);
    }
    let latest = levels.len() - 1;
    if (latest as f64) * dt < t_end - 1e-12 * t.max(1.0) {
        return Err(Error::Config(format!(
            "history needs density up to t = {t_end}, only {} levels stored",
            levels.len()
        )));
    }
    let ms = levels[0].len();
    let h = 2.0 * PI / ms as f64;

    let mut nodes = Vec::new();
    let mut j = 0usize;
    while (j as f64) * dt < t_end * (1.0 - 1e-14) {
        let a = j as f64 * dt;
        let bnd = ((j + 1) as f64 * dt).min(t_end);
        let (c, half) = (0.5 * (a + bnd), 0.5 * (bnd - a));
        let g = gl_unit(cfg.nodes_for(t - c, half));
        for (x, w) in g.nodes.iter().zip(&g.weights) {
            nodes.push((c + half * x, w * half));
        }
        j += 1;
    }

    let mut ys = vec![Vec2::ZERO; ms];
    let mut src = vec![Vec2::ZERO; ms];
    let mut phi = vec![Vec2::ZERO; ms];
    for &(tau, wt) in &nodes {
        let st = DensityHistory::stencil_at(dt, order, tau, latest);
        phi.iter_mut().for_each(|p| *p = Vec2::ZERO);
        for (l, lw) in st.levels() {
            for (p, v) in phi.iter_mut().zip(&levels[l]) {
                *p += *v * lw;
            }
        }
        for k in 0..ms {
            let (y, yt) = b.position_and_tangent(h * k as f64, tau);
            ys[k] = y;
            // SLP carries |y_θ|; the DLP kernel takes the unnormalized normal.
            src[k] = match kind {
                LayerKind::Single => Vec2::new(yt.norm(), 0.0),
                LayerKind::Double => yt.rot_cw(),
            };
        }
        let u = t - tau;
        let w = wt * h;
        out.par_iter_mut().zip(targets.par_iter()).for_each(|(o, &x)| {
            let mut acc = Vec2::ZERO;
            for k in 0..ms {
                let r = x - ys[k];
                acc += match kind {
                    LayerKind::Single => stokeslet_unchecked(r, u).apply(phi[k]) * src[k].x,
                    LayerKind::Double => dlp_kernel_unchecked(r, src[k], u).apply(phi[k]),
                };
            }
            *o += acc * w;
        });
    }
    Ok(out)
}
