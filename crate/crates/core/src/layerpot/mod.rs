//! Single- and double-layer potentials split into an asymptotic slice
//! `[t−ε, t]`, a near-singular slice `[t−δ, t−ε]`, a smooth history
//! `[0, t−δ]` and (for the double layer) the instantaneous pressure term.

mod asym;
mod history;
mod history_part;
mod identities;
mod near;
mod offsurface;
mod pressure;
mod spatial;
mod time_rule;

pub use asym::{dlp_asym, dlp_asym_tensors, slp_asym};
pub use history::{DensityHistory, Stencil};
pub use history_part::{history_eval, HistoryConfig};
pub use identities::{line_identities, moment_identities, IdentityCheck};
pub use near::{NearOperator, NearWindow};
pub use offsurface::{local_offsurface, pressure_offsurface, window_distance};
pub use pressure::{dlp_pressure, PressureOperator};
pub use spatial::{spatial_split, NearRuleConfig, SpatialSplit};
pub use time_rule::{near_time_integrals, LocalTimeRule, NearTimeIntegrals, CUT_LAMBDA};

use crate::error::{Error, Result};
use crate::geometry::{snapshot, spectral_arclength_derivative, MovingBoundary};
use crate::linalg::Vec2;
use crate::quadrature::AlpertOrder;
use crate::spectral::Spectral;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LayerKind {
    Single,
    Double,
}

/// Parameters of the asymptotic / near / history split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitConfig {
    /// Width of the asymptotic slice.
    pub eps: f64,
    /// Width of the local window (asymptotic plus near slices).
    pub delta: f64,
    /// Gauss nodes for the full transformed lag range `[ln ε, ln δ]`;
    /// shorter ranges get proportionally fewer.
    pub n_gl: usize,
    /// Order of the singular rule for the pressure term.
    pub order: AlpertOrder,
    pub near: NearRuleConfig,
    pub history: HistoryConfig,
    /// Source-grid refinement for off-surface targets.
    pub upsample: usize,
    /// Off-surface targets must be at least this many upsampled grid
    /// spacings from the boundary.
    pub min_offsurface_spacings: f64,
}

impl SplitConfig {
    pub fn new(eps: f64, delta: f64) -> Result<Self> {
        let c = SplitConfig {
            eps,
            delta,
            n_gl: Self::min_nodes(eps),
            order: AlpertOrder::Sixteen,
            near: NearRuleConfig::default(),
            history: HistoryConfig::default(),
            upsample: 8,
            min_offsurface_spacings: 6.0,
        };
        c.validate()?;
        Ok(c)
    }

    /// `⌈10 log₁₀(1/ε)⌉`.
    pub fn min_nodes(eps: f64) -> usize {
        (10.0 * (1.0 / eps).log10()).ceil().max(1.0) as usize
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps <= self.delta && self.delta.is_finite()) {
            return Err(Error::Config(format!("need 0 < eps ≤ delta, got eps={}, delta={}", self.eps, self.delta)));
        }
        if self.n_gl < Self::min_nodes(self.eps) {
            return Err(Error::Config(format!(
                "n_gl = {} is below ceil(10 log10(1/eps)) = {}",
                self.n_gl,
                Self::min_nodes(self.eps)
            )));
        }
        if self.upsample == 0 {
            return Err(Error::Config("upsample factor must be positive".into()));
        }
        Ok(())
    }

    /// Gauss nodes per unit length in `z = ln u`.
    pub fn z_density(&self) -> f64 {
        let len = (self.delta / self.eps).ln();
        if len > 1.0 {
            self.n_gl as f64 / len
        } else {
            self.n_gl as f64
        }
    }
}

/// Evaluation point of a layer potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    /// Boundary grid node `i` (collocation point).
    Node(usize),
    /// A point off the boundary.
    Point(Vec2),
}

fn single_window(hist: &DensityHistory, t: f64, cfg: &SplitConfig) -> NearWindow {
    NearWindow {
        t,
        u_lo: cfg.eps,
        u_hi: cfg.delta.min(t),
        dt: hist.dt(),
        order: hist.order(),
        latest: hist.len() - 1,
    }
}

/// Near-singular slice of the single layer at one grid node.
pub fn slp_near(b: &dyn MovingBoundary, hist: &DensityHistory, target: usize, t: f64, cfg: &SplitConfig) -> Result<Vec2> {
    near_one(b, hist, target, t, cfg, LayerKind::Single)
}

/// Near-singular slice of the double layer (without the pressure term) at one grid node.
pub fn dlp_near(b: &dyn MovingBoundary, hist: &DensityHistory, target: usize, t: f64, cfg: &SplitConfig) -> Result<Vec2> {
    near_one(b, hist, target, t, cfg, LayerKind::Double)
}

fn near_one(
    b: &dyn MovingBoundary,
    hist: &DensityHistory,
    target: usize,
    t: f64,
    cfg: &SplitConfig,
    kind: LayerKind,
) -> Result<Vec2> {
    if hist.is_empty() {
        return Ok(Vec2::ZERO);
    }
    let win = single_window(hist, t, cfg);
    let op = NearOperator::build(b, hist.grid_size(), &win, kind, &[target], cfg)?;
    Ok(op.apply_history(hist, op.levels())[0])
}

/// Layer potential at `t` (the last stored level must reach `t`).
///
/// Grid-node targets get the principal-value (direct) value, without the
/// jump term; off-surface targets use the smooth rules throughout.
pub fn potential_eval(
    b: &dyn MovingBoundary,
    hist: &DensityHistory,
    targets: &[Target],
    t: f64,
    kind: LayerKind,
    cfg: &SplitConfig,
) -> Result<Vec<Vec2>> {
    cfg.validate()?;
    let mut out = vec![Vec2::ZERO; targets.len()];
    if hist.is_empty() {
        return Ok(out);
    }
    let m = hist.grid_size();
    if ((hist.len() - 1) as f64) * hist.dt() < t - 1e-12 * t.max(1.0) {
        return Err(Error::Config(format!("density history ends before t = {t}")));
    }
    let phi_now = hist.interpolate(t);

    let nodes: Vec<(usize, usize)> =
        targets.iter().enumerate().filter_map(|(k, tg)| if let Target::Node(i) = tg { Some((k, *i)) } else { None }).collect();
    let points: Vec<(usize, Vec2)> =
        targets.iter().enumerate().filter_map(|(k, tg)| if let Target::Point(x) = tg { Some((k, *x)) } else { None }).collect();

    if !nodes.is_empty() {
        let idx: Vec<usize> = nodes.iter().map(|p| p.1).collect();
        if let Some(&bad) = idx.iter().find(|&&i| i >= m) {
            return Err(Error::UnsupportedTarget(format!("grid index {bad} out of range for M = {m}")));
        }
        let snap = snapshot(b, m, t)?;
        let asym = if cfg.eps < t {
            match kind {
                LayerKind::Single => slp_asym(&snap, &phi_now, cfg.eps),
                LayerKind::Double => {
                    let phi_s = spectral_arclength_derivative(&snap, &phi_now)?;
                    dlp_asym(&snap, &phi_now, &phi_s, cfg.eps)
                }
            }
        } else {
            vec![Vec2::ZERO; m]
        };
        let near = if cfg.eps < t {
            let op = NearOperator::build(b, m, &single_window(hist, t, cfg), kind, &idx, cfg)?;
            op.apply_history(hist, op.levels())
        } else {
            vec![Vec2::ZERO; idx.len()]
        };
        let xs: Vec<Vec2> = idx.iter().map(|&i| snap.points[i]).collect();
        let hist_part = history_eval(b, hist.levels(), hist.dt(), hist.order(), t, cfg.delta, &xs, kind, &cfg.history)?;
        let pressure = match kind {
            LayerKind::Double => PressureOperator::build(b, m, t, &idx, cfg.order)?.apply(&phi_now),
            LayerKind::Single => vec![Vec2::ZERO; idx.len()],
        };
        for (j, &(k, i)) in nodes.iter().enumerate() {
            out[k] = asym[i] + near[j] + hist_part[j] + pressure[j];
        }
    }

    if !points.is_empty() {
        let xs: Vec<Vec2> = points.iter().map(|p| p.1).collect();
        let vals = offsurface_eval(b, hist, &xs, t, kind, cfg, &phi_now)?;
        for (&(k, _), v) in points.iter().zip(vals) {
            out[k] = v;
        }
    }
    Ok(out)
}

fn offsurface_eval(
    b: &dyn MovingBoundary,
    hist: &DensityHistory,
    xs: &[Vec2],
    t: f64,
    kind: LayerKind,
    cfg: &SplitConfig,
    phi_now: &[Vec2],
) -> Result<Vec<Vec2>> {
    let m = hist.grid_size();
    let ms = m * cfg.upsample;
    let spacing = b.max_param_speed(t, t) * 2.0 * std::f64::consts::PI / ms as f64;
    let required = cfg.min_offsurface_spacings * spacing;
    for (index, &x) in xs.iter().enumerate() {
        let d = window_distance(b, ms, x, t, t);
        if d < required {
            return Err(Error::TooClose { index, distance: d, required });
        }
    }
    let spec = Spectral::new(m)?;
    let up: Vec<Vec<Vec2>> = if cfg.upsample == 1 {
        hist.levels().to_vec()
    } else {
        hist.levels().iter().map(|l| spec.upsample(l, cfg.upsample)).collect()
    };
    let local = local_offsurface(b, &up, hist.dt(), hist.order(), t, cfg.delta, xs, kind, cfg.z_density())?;
    let history = history_eval(b, &up, hist.dt(), hist.order(), t, cfg.delta, xs, kind, &cfg.history)?;
    let mut out: Vec<Vec2> = local.iter().zip(&history).map(|(a, c)| *a + *c).collect();
    if kind == LayerKind::Double {
        let phi_up = if cfg.upsample == 1 { phi_now.to_vec() } else { spec.upsample(phi_now, cfg.upsample) };
        for (o, p) in out.iter_mut().zip(pressure_offsurface(b, &phi_up, t, xs)) {
            *o += p;
        }
    }
    Ok(out)
}
