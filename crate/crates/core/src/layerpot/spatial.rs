use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::gl_unit;

/// Shape of the partition-of-unity split used by the near part.
///
/// The spatial integrand of the near part varies on the scale √ε around the
/// target, far below the grid spacing. It is split with a smooth window
/// `χ(σ) = ½[erf((σ+c)/w) − erf((σ−c)/w)]`: `(1−χ)F` is integrated by the
/// periodic trapezoidal rule on the grid, and `χF` by Gauss panels that are
/// uniform away from the target and dyadically graded towards it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearRuleConfig {
    /// Window edge width `w`, in grid spacings.
    pub window_width: f64,
    /// Window half-width `c`, in units of `w`.
    pub window_center: f64,
    /// Width of the uniform panels, in grid spacings.
    pub panel_width: f64,
    pub panel_nodes: usize,
    pub graded_nodes: usize,
    /// The innermost panel is `[0, grading_floor·√ε/max|y_θ|]`.
    pub grading_floor: f64,
}

impl Default for NearRuleConfig {
    fn default() -> Self {
        NearRuleConfig {
            window_width: 2.0,
            window_center: 6.0,
            panel_width: 2.0,
            panel_nodes: 12,
            graded_nodes: 12,
            grading_floor: 0.5,
        }
    }
}

impl NearRuleConfig {
    /// Radius of the window's support (beyond it χ < 1e-17), in grid spacings.
    pub fn support(&self) -> f64 {
        (self.window_center + 6.0) * self.window_width
    }

    pub fn chi(&self, sigma: f64, h: f64) -> f64 {
        let (c, w) = (self.window_center * self.window_width * h, self.window_width * h);
        0.5 * (libm::erf((sigma + c) / w) - libm::erf((sigma - c) / w))
    }
}

/// Parameter offsets and weights of the split rule around a grid target.
#[derive(Debug, Clone)]
pub struct SpatialSplit {
    /// `(σ, weight)` of the Gauss nodes for `χF`, symmetric about 0.
    pub inner: Vec<(f64, f64)>,
    /// `(k, weight)`: grid node offsets for `(1−χ)F`.
    pub far: Vec<(isize, f64)>,
}

pub fn spatial_split(m: usize, eps: f64, max_param_speed: f64, cfg: &NearRuleConfig) -> Result<SpatialSplit> {
    let h = 2.0 * PI / m as f64;
    let radius = cfg.support() * h;
    if radius > 0.9 * PI {
        return Err(Error::Config(format!(
            "grid of {m} points is too coarse for the near-part window (support {radius:.3} rad)"
        )));
    }
    let sigma_min = (cfg.grading_floor * eps.sqrt() / max_param_speed).min(0.5 * cfg.panel_width * h);

    let mut half: Vec<(f64, f64)> = Vec::new();
    let mut push_panel = |a: f64, b: f64, n: usize| {
        let g = gl_unit(n);
        let (c, r) = (0.5 * (a + b), 0.5 * (b - a));
        for (x, w) in g.nodes.iter().zip(&g.weights) {
            half.push((c + r * x, w * r));
        }
    };
    let r1 = cfg.panel_width * h;
    let n_uniform = ((radius - r1) / r1).ceil().max(1.0) as usize;
    let width = (radius - r1) / n_uniform as f64;
    for p in 0..n_uniform {
        push_panel(r1 + p as f64 * width, r1 + (p + 1) as f64 * width, cfg.panel_nodes);
    }
    let mut hi = r1;
    while hi > sigma_min {
        push_panel(0.5 * hi, hi, cfg.graded_nodes);
        hi *= 0.5;
    }
    push_panel(0.0, hi, cfg.graded_nodes);

    let mut inner = Vec::with_capacity(2 * half.len());
    for &(s, w) in &half {
        let wc = w * cfg.chi(s, h);
        inner.push((s, wc));
        inner.push((-s, wc));
    }
    let mut far = Vec::new();
    let kmax = (m / 2) as isize;
    for k in 1..=kmax {
        let w = h * (1.0 - cfg.chi(k as f64 * h, h));
        if w > 1e-18 * h {
            far.push((k, w));
            if k != kmax {
                far.push((-k, w));
            }
        }
    }
    Ok(SpatialSplit { inner, far })
}
