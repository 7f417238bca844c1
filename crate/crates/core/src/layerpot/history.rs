use crate::error::{Error, Result};
use crate::linalg::Vec2;

/// Density samples `φ(θ_i, t_j)` on the space-time grid `t_j = j·Δt`, with
/// backward Lagrange interpolation of order `k` in time.
#[derive(Debug, Clone)]
pub struct DensityHistory {
    dt: f64,
    m: usize,
    order: usize,
    levels: Vec<Vec<Vec2>>,
}

/// Interpolation stencil: `φ(τ) ≈ Σ_l weights[l] φ(t_{start+l})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stencil {
    pub start: usize,
    pub len: usize,
    pub weights: [f64; Stencil::MAX],
}

impl Stencil {
    pub const MAX: usize = 8;

    pub fn levels(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        (0..self.len).map(move |l| (self.start + l, self.weights[l]))
    }
}

impl DensityHistory {
    pub fn new(dt: f64, m: usize, order: usize) -> Result<Self> {
        if !(dt > 0.0) {
            return Err(Error::Config(format!("time step must be positive, got {dt}")));
        }
        if order == 0 || order > Stencil::MAX {
            return Err(Error::Config(format!("interpolation order must be in 1..={}, got {order}", Stencil::MAX)));
        }
        Ok(DensityHistory { dt, m, order, levels: Vec::new() })
    }

    /// A density that does not change in time, stored on two levels `{0, dt}`.
    pub fn constant(dt: f64, field: Vec<Vec2>) -> Result<Self> {
        let mut h = Self::new(dt, field.len(), 2)?;
        h.push(field.clone())?;
        h.push(field)?;
        Ok(h)
    }

    pub fn push(&mut self, level: Vec<Vec2>) -> Result<()> {
        if level.len() != self.m {
            return Err(Error::Config(format!(
                "density level has {} samples, history grid has {}",
                level.len(),
                self.m
            )));
        }
        self.levels.push(level);
        Ok(())
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn grid_size(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of stored levels.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn level(&self, j: usize) -> &[Vec2] {
        &self.levels[j]
    }

    pub fn levels(&self) -> &[Vec<Vec2>] {
        &self.levels
    }

    pub fn time(&self, j: usize) -> f64 {
        j as f64 * self.dt
    }

    /// Stencil for time τ using levels up to `latest` (inclusive).
    ///
    /// For τ ∈ (t_{j−1}, t_j] the stencil is `{t_{j−k+1}, …, t_j}`; near the
    /// start it slides forward, and it shrinks when fewer than `k` levels exist.
    pub fn stencil_at(dt: f64, order: usize, tau: f64, latest: usize) -> Stencil {
        let x = tau / dt;
        let hi = ((x - 1e-9).ceil().max(0.0) as usize).min(latest);
        let len = order.min(latest + 1);
        let start = (hi + 1).saturating_sub(len).min(latest + 1 - len);
        let mut weights = [0.0; Stencil::MAX];
        for (l, w) in weights.iter_mut().enumerate().take(len) {
            let xl = (start + l) as f64;
            let mut p = 1.0;
            for q in 0..len {
                if q != l {
                    let xq = (start + q) as f64;
                    p *= (x - xq) / (xl - xq);
                }
            }
            *w = p;
        }
        Stencil { start, len, weights }
    }

    pub fn stencil(&self, tau: f64, latest: usize) -> Stencil {
        Self::stencil_at(self.dt, self.order, tau, latest)
    }

    /// Interpolated density at time τ from the stored levels.
    pub fn interpolate(&self, tau: f64) -> Vec<Vec2> {
        let s = self.stencil(tau, self.len() - 1);
        let mut out = vec![Vec2::ZERO; self.m];
        for (j, w) in s.levels() {
            for (o, v) in out.iter_mut().zip(&self.levels[j]) {
                *o += *v * w;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_reproduced() {
        let dt = 0.1;
        let mut h = DensityHistory::new(dt, 1, 4).unwrap();
        let p = |t: f64| 1.0 - 2.0 * t + 3.0 * t * t - 4.0 * t * t * t;
        for j in 0..7 {
            h.push(vec![Vec2::new(p(j as f64 * dt), 0.0)]).unwrap();
        }
        for tau in [0.0, 0.013, 0.1, 0.27, 0.5999, 0.6] {
            let v = h.interpolate(tau)[0].x;
            assert!((v - p(tau)).abs() < 1e-13, "tau={tau}: {v} vs {}", p(tau));
        }
    }

    #[test]
    fn startup_stencils_shrink() {
        let s = DensityHistory::stencil_at(1.0, 4, 0.5, 1);
        assert_eq!((s.start, s.len), (0, 2));
        let s = DensityHistory::stencil_at(1.0, 4, 2.5, 5);
        assert_eq!((s.start, s.len), (0, 4));
        let s = DensityHistory::stencil_at(1.0, 4, 4.5, 5);
        assert_eq!((s.start, s.len), (2, 4));
    }
}
