//! Local window and pressure term for targets away from the boundary.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::time_rule::LocalTimeRule;
use super::{DensityHistory, LayerKind};
use crate::error::{Error, Result};
use crate::geometry::MovingBoundary;
use crate::kernels::{dlp_kernel_unchecked, pressurelet_unchecked, stokeslet_unchecked};
use crate::linalg::Vec2;

/// Smallest distance from `x` to the sampled boundary over `[t0, t1]`.
pub fn window_distance(b: &dyn MovingBoundary, ms: usize, x: Vec2, t0: f64, t1: f64) -> f64 {
    let h = 2.0 * PI / ms as f64;
    let mut d = f64::INFINITY;
    for s in 0..=4 {
        let tau = t0 + (t1 - t0) * s as f64 / 4.0;
        for k in 0..ms {
            d = d.min((x - b.position(h * k as f64, tau)).norm());
        }
    }
    d
}

/// `∫_{t−δ}^{t} ∫_Γ(τ) K φ ds dτ` at off-surface points, by the trapezoidal
/// rule on the (typically upsampled) source grid of `levels` and a lag rule
/// that is plain Gauss where the kernel is smooth in `u` and Gauss in `ln u`
/// where it is not.
#[allow(clippy::too_many_arguments)]
pub fn local_offsurface(
    b: &dyn MovingBoundary,
    levels: &[Vec<Vec2>],
    dt: f64,
    order: usize,
    t: f64,
    delta: f64,
    targets: &[Vec2],
    kind: LayerKind,
    z_density: f64,
) -> Result<Vec<Vec2>> {
    if levels.is_empty() {
        return Ok(vec![Vec2::ZERO; targets.len()]);
    }
    let latest = levels.len() - 1;
    if (latest as f64) * dt < t - 1e-12 * t.max(1.0) {
        return Err(Error::Config(format!("local window needs density up to t = {t}")));
    }
    let ms = levels[0].len();
    let h = 2.0 * PI / ms as f64;
    let t0 = (t - delta).max(0.0);
    let delta = t - t0;
    if delta <= 0.0 {
        return Ok(vec![Vec2::ZERO; targets.len()]);
    }
    let vmax = b.max_speed(t0, t);
    let mut breaks: Vec<f64> = (0..=latest)
        .map(|j| t - j as f64 * dt)
        .filter(|&u| u > 1e-12 * delta && u < delta * (1.0 - 1e-12))
        .collect();
    breaks.sort_by(f64::total_cmp);
    let rule = LocalTimeRule::new(0.0, delta, breaks, z_density);

    Ok(targets
        .par_iter()
        .map_init(Vec::new, |buf, &x| {
            let floor = 0.5 * window_distance(b, ms, x, t0, t);
            let mut acc = Vec2::ZERO;
            for k in 0..ms {
                let th = h * k as f64;
                let r0 = (x - b.position(th, t)).norm();
                rule.nodes((r0 - vmax * delta).max(floor), buf);
                for &(u, wu) in buf.iter() {
                    let tau = t - u;
                    let (y, yt) = b.position_and_tangent(th, tau);
                    let r = x - y;
                    let st = DensityHistory::stencil_at(dt, order, tau, latest);
                    let mut phi = Vec2::ZERO;
                    for (l, lw) in st.levels() {
                        phi += levels[l][k] * lw;
                    }
                    let v = match kind {
                        LayerKind::Single => stokeslet_unchecked(r, u).apply(phi) * yt.norm(),
                        LayerKind::Double => dlp_kernel_unchecked(r, yt.rot_cw(), u).apply(phi),
                    };
                    acc += v * wu;
                }
            }
            acc * h
        })
        .collect())
}

/// Pressurelet term at off-surface points by the trapezoidal rule.
pub fn pressure_offsurface(b: &dyn MovingBoundary, phi: &[Vec2], t: f64, targets: &[Vec2]) -> Vec<Vec2> {
    let ms = phi.len();
    let h = 2.0 * PI / ms as f64;
    let src: Vec<(Vec2, Vec2)> = (0..ms)
        .map(|k| {
            let (y, yt) = b.position_and_tangent(h * k as f64, t);
            (y, yt.rot_cw())
        })
        .collect();
    targets
        .par_iter()
        .map(|&x| {
            let mut acc = Vec2::ZERO;
            for (k, &(y, nu)) in src.iter().enumerate() {
                acc += pressurelet_unchecked(x - y, nu).apply(phi[k]);
            }
            acc * h
        })
        .collect()
}
