//! Principal-value pressurelet term `PV ∫_Γ(t) (r⊗n)/(2π|r|²) φ ds`.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::MovingBoundary;
use crate::kernels::pressurelet_unchecked;
use crate::linalg::{Tensor2, Vec2};
use crate::quadrature::AlpertOrder;
use crate::spectral::{Shifter, Spectral};

/// Pressure term at grid targets via the symmetric Alpert rule, whose
/// correction nodes come in ± pairs so the odd `1/σ` part cancels exactly.
#[derive(Debug, Clone)]
pub struct PressureOperator {
    m: usize,
    targets: Vec<usize>,
    shifter: Shifter,
    n_special: usize,
    grid: Vec<isize>,
    special_t: Vec<Tensor2>,
    grid_t: Vec<Tensor2>,
}

impl PressureOperator {
    pub fn build(b: &dyn MovingBoundary, m: usize, t: f64, targets: &[usize], order: AlpertOrder) -> Result<Self> {
        if m < order.min_points() {
            return Err(Error::Config(format!("order-{} rule needs M ≥ {}", order.order(), order.min_points())));
        }
        if let Some(&bad) = targets.iter().find(|&&i| i >= m) {
            return Err(Error::UnsupportedTarget(format!("grid index {bad} out of range for M = {m}")));
        }
        let tab = order.table();
        let h = 2.0 * PI / m as f64;
        let mut special = Vec::new();
        for (&x, &w) in tab.nodes.iter().zip(tab.weights) {
            special.push((x * h, w * h));
            special.push((-x * h, w * h));
        }
        let a = tab.a as isize;
        let grid: Vec<isize> = (a..=m as isize - a).collect();
        let kernel = |x: Vec2, th: f64| {
            let (y, yt) = b.position_and_tangent(th, t);
            pressurelet_unchecked(x - y, yt.rot_cw())
        };
        let per: Vec<(Vec<Tensor2>, Vec<Tensor2>)> = targets
            .par_iter()
            .map(|&i| {
                let th = h * i as f64;
                let x = b.position(th, t);
                let s = special.iter().map(|&(o, w)| kernel(x, th + o) * w).collect();
                let g = grid.iter().map(|&k| kernel(x, th + k as f64 * h) * h).collect();
                (s, g)
            })
            .collect();
        let mut special_t = Vec::new();
        let mut grid_t = Vec::new();
        for (s, g) in per {
            special_t.extend(s);
            grid_t.extend(g);
        }
        if let Some(p) = special_t.iter().chain(&grid_t).position(|k| !k.is_finite()) {
            let ti = p % targets.len().max(1);
            return Err(Error::NonFinite { index: targets[ti], node: h * targets[ti] as f64 });
        }
        let offsets: Vec<f64> = special.iter().map(|p| p.0).collect();
        Ok(PressureOperator {
            m,
            targets: targets.to_vec(),
            shifter: Spectral::new(m)?.shifter(&offsets),
            n_special: offsets.len(),
            grid,
            special_t,
            grid_t,
        })
    }

    pub fn apply(&self, density: &[Vec2]) -> Vec<Vec2> {
        assert_eq!(density.len(), self.m);
        let shifted = self.shifter.apply(density);
        let (ns, ng, m) = (self.n_special, self.grid.len(), self.m as isize);
        self.targets
            .iter()
            .enumerate()
            .map(|(ti, &i)| {
                let mut out = Vec2::ZERO;
                for (q, sh) in shifted.iter().enumerate() {
                    out += self.special_t[ti * ns + q].apply(sh[i]);
                }
                for (g, &k) in self.grid.iter().enumerate() {
                    let j = (i as isize + k).rem_euclid(m) as usize;
                    out += self.grid_t[ti * ng + g].apply(density[j]);
                }
                out
            })
            .collect()
    }
}

/// Pressure term at one grid node of an `M = phi.len()` grid at time `t`.
pub fn dlp_pressure(b: &dyn MovingBoundary, t: f64, phi: &[Vec2], target: usize, order: AlpertOrder) -> Result<Vec2> {
    Ok(PressureOperator::build(b, phi.len(), t, &[target], order)?.apply(phi)[0])
}
