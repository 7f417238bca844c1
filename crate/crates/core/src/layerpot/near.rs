//! The near-singular slice `[t−δ, t−ε]` for targets at grid nodes.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::spatial::spatial_split;
use super::time_rule::LocalTimeRule;
use super::{DensityHistory, LayerKind, SplitConfig, Stencil};
use crate::error::{Error, Result};
use crate::geometry::MovingBoundary;
use crate::kernels::{dlp_kernel_unchecked, stokeslet_unchecked};
use crate::linalg::{Tensor2, Vec2};
use crate::spectral::{Shifter, Spectral};

/// Time-grid context for a local window ending at `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearWindow {
    pub t: f64,
    /// Lag range `[u_lo, u_hi]`, i.e. `τ ∈ [t − u_hi, t − u_lo]`.
    pub u_lo: f64,
    pub u_hi: f64,
    pub dt: f64,
    pub order: usize,
    /// Highest density level the interpolation stencils may use.
    pub latest: usize,
}

impl NearWindow {
    /// The window `[t−δ, t−ε]` at level `latest`, with `t = latest·Δt`.
    pub fn at_level(latest: usize, dt: f64, order: usize, cfg: &SplitConfig) -> Self {
        NearWindow { t: latest as f64 * dt, u_lo: cfg.eps, u_hi: cfg.delta, dt, order, latest }
    }

    fn validate(&self) -> Result<()> {
        if !(self.u_lo > 0.0 && self.u_lo <= self.u_hi) {
            return Err(Error::Config(format!("bad lag window [{}, {}]", self.u_lo, self.u_hi)));
        }
        if self.t - self.u_hi < -1e-12 * self.t.max(1.0) {
            return Err(Error::Config(format!(
                "window reaches before t = 0 (t = {}, delta = {})",
                self.t, self.u_hi
            )));
        }
        if self.latest as f64 * self.dt < self.t - self.u_lo - 1e-12 {
            return Err(Error::Config("density levels do not cover the window".into()));
        }
        Ok(())
    }

    /// Lags at which the interpolation stencil changes.
    pub fn breaks(&self) -> Vec<f64> {
        let mut b: Vec<f64> = (0..=self.latest)
            .map(|j| self.t - j as f64 * self.dt)
            .filter(|&u| u > self.u_lo * (1.0 + 1e-12) && u < self.u_hi * (1.0 - 1e-12))
            .collect();
        b.sort_by(f64::total_cmp);
        b
    }

    pub fn first_level(&self) -> usize {
        DensityHistory::stencil_at(self.dt, self.order, (self.t - self.u_hi).max(0.0), self.latest).start
    }
}

/// Precomputed near-part quadrature: for every target, source offset and
/// density level, the 2×2 tensor that multiplies that level's density value.
///
/// Contributions of known levels can then be summed once, while the level
/// being solved for is applied matrix-free.
#[derive(Debug, Clone)]
pub struct NearOperator {
    m: usize,
    targets: Vec<usize>,
    level_lo: usize,
    nlev: usize,
    shifter: Option<Shifter>,
    n_inner: usize,
    far: Vec<isize>,
    inner_t: Vec<Tensor2>,
    far_t: Vec<Tensor2>,
}

impl NearOperator {
    pub fn build(
        b: &dyn MovingBoundary,
        m: usize,
        win: &NearWindow,
        kind: LayerKind,
        targets: &[usize],
        cfg: &SplitConfig,
    ) -> Result<Self> {
        win.validate()?;
        if let Some(&bad) = targets.iter().find(|&&i| i >= m) {
            return Err(Error::UnsupportedTarget(format!("grid index {bad} out of range for M = {m}")));
        }
        let level_lo = win.first_level();
        let nlev = win.latest + 1 - level_lo;
        if win.u_lo >= win.u_hi {
            return Ok(NearOperator {
                m,
                targets: targets.to_vec(),
                level_lo,
                nlev,
                shifter: None,
                n_inner: 0,
                far: Vec::new(),
                inner_t: Vec::new(),
                far_t: Vec::new(),
            });
        }
        let t0 = (win.t - win.u_hi).max(0.0);
        let split = spatial_split(m, win.u_lo, b.max_param_speed(t0, win.t), &cfg.near)?;
        let rule = LocalTimeRule::new(win.u_lo, win.u_hi, win.breaks(), cfg.z_density());
        let touching_stencils: Vec<Stencil> = rule
            .touching_nodes()
            .iter()
            .map(|&(u, _)| DensityHistory::stencil_at(win.dt, win.order, win.t - u, win.latest))
            .collect();
        let vmax = b.max_speed(t0, win.t);
        let h = 2.0 * PI / m as f64;
        let sigmas: Vec<f64> = split.inner.iter().map(|p| p.0).collect();
        let n_inner = sigmas.len();
        let n_far = split.far.len();

        let per_target: Vec<(Vec<Tensor2>, Vec<Tensor2>)> = targets
            .par_iter()
            .map_init(Buffers::default, |buf, &i| {
                let th = h * i as f64;
                let x = b.position(th, win.t);
                let mut acc = Accumulator { b, x, win, kind, rule: &rule, touching_stencils: &touching_stencils, vmax, level_lo, nlev, buf };
                let mut inner = vec![Tensor2::ZERO; n_inner * nlev];
                for (q, &(s, w)) in split.inner.iter().enumerate() {
                    acc.add(th + s, w, &mut inner[q * nlev..(q + 1) * nlev]);
                }
                let mut far = vec![Tensor2::ZERO; n_far * nlev];
                for (f, &(k, w)) in split.far.iter().enumerate() {
                    acc.add(th + k as f64 * h, w, &mut far[f * nlev..(f + 1) * nlev]);
                }
                (inner, far)
            })
            .collect();

        let mut inner_t = Vec::with_capacity(targets.len() * n_inner * nlev);
        let mut far_t = Vec::with_capacity(targets.len() * n_far * nlev);
        for (ti, (a, f)) in per_target.into_iter().enumerate() {
            if a.iter().chain(&f).any(|t| !t.is_finite()) {
                return Err(Error::NonFinite { index: targets[ti], node: h * targets[ti] as f64 });
            }
            inner_t.extend(a);
            far_t.extend(f);
        }
        Ok(NearOperator {
            m,
            targets: targets.to_vec(),
            level_lo,
            nlev,
            shifter: Some(Spectral::new(m)?.shifter(&sigmas)),
            n_inner,
            far: split.far.iter().map(|p| p.0).collect(),
            inner_t,
            far_t,
        })
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// Density levels the operator couples to.
    pub fn levels(&self) -> std::ops::Range<usize> {
        self.level_lo..self.level_lo + self.nlev
    }

    /// Contribution of density level `level`, one value per target.
    pub fn apply_level(&self, level: usize, density: &[Vec2]) -> Vec<Vec2> {
        assert_eq!(density.len(), self.m);
        let Some(shifter) = &self.shifter else {
            return vec![Vec2::ZERO; self.targets.len()];
        };
        if !self.levels().contains(&level) {
            return vec![Vec2::ZERO; self.targets.len()];
        }
        let l = level - self.level_lo;
        let shifted = shifter.apply(density);
        let (nlev, n_inner, n_far, m) = (self.nlev, self.n_inner, self.far.len(), self.m as isize);
        self.targets
            .par_iter()
            .enumerate()
            .map(|(ti, &i)| {
                let mut out = Vec2::ZERO;
                let base = ti * n_inner * nlev;
                for (q, sh) in shifted.iter().enumerate() {
                    out += self.inner_t[base + q * nlev + l].apply(sh[i]);
                }
                let base = ti * n_far * nlev;
                for (f, &k) in self.far.iter().enumerate() {
                    let j = (i as isize + k).rem_euclid(m) as usize;
                    out += self.far_t[base + f * nlev + l].apply(density[j]);
                }
                out
            })
            .collect()
    }

    /// Sum of the contributions of all stored levels in `levels`.
    pub fn apply_history(&self, hist: &DensityHistory, levels: std::ops::Range<usize>) -> Vec<Vec2> {
        let mut out = vec![Vec2::ZERO; self.targets.len()];
        for j in levels {
            if j < hist.len() && self.levels().contains(&j) {
                for (o, v) in out.iter_mut().zip(self.apply_level(j, hist.level(j))) {
                    *o += v;
                }
            }
        }
        out
    }
}

struct Accumulator<'a> {
    b: &'a dyn MovingBoundary,
    x: Vec2,
    win: &'a NearWindow,
    kind: LayerKind,
    rule: &'a LocalTimeRule,
    touching_stencils: &'a [Stencil],
    vmax: f64,
    level_lo: usize,
    nlev: usize,
    buf: &'a mut Buffers,
}

#[derive(Default)]
struct Buffers {
    nodes: Vec<(f64, f64)>,
    taus: Vec<f64>,
    geom: Vec<(Vec2, Vec2)>,
    stencils: Vec<Stencil>,
}

impl Accumulator<'_> {
    /// Time-integrate the kernel for the source at parameter `th` and add
    /// `weight ×` the result to the per-level slots.
    fn add(&mut self, th: f64, weight: f64, slots: &mut [Tensor2]) {
        let win = self.win;
        let r0 = (self.x - self.b.position(th, win.t)).norm();
        let r_low = (r0 - self.vmax * win.u_hi).max(0.0);
        let buf = &mut *self.buf;
        let touching = self.rule.is_touching(r_low);
        let (nodes, stencils) = if touching {
            (self.rule.touching_nodes(), self.touching_stencils)
        } else {
            self.rule.nodes(r_low, &mut buf.nodes);
            buf.stencils.clear();
            buf.stencils
                .extend(buf.nodes.iter().map(|&(u, _)| DensityHistory::stencil_at(win.dt, win.order, win.t - u, win.latest)));
            (&buf.nodes[..], &buf.stencils[..])
        };
        buf.taus.clear();
        buf.taus.extend(nodes.iter().map(|&(u, _)| win.t - u));
        self.b.trajectory(th, &buf.taus, &mut buf.geom);
        for ((&(u, wu), st), &(y, yt)) in nodes.iter().zip(stencils).zip(&buf.geom) {
            let r = self.x - y;
            let k = match self.kind {
                LayerKind::Single => stokeslet_unchecked(r, u) * yt.norm(),
                LayerKind::Double => dlp_kernel_unchecked(r, yt.rot_cw(), u),
            };
            for (j, lw) in st.levels() {
                slots[j - self.level_lo].add_scaled(&k, weight * wu * lw);
            }
        }
        debug_assert!(slots.len() == self.nlev);
    }
}
