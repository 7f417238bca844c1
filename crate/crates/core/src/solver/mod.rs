//! Implicit time marching for the interior Dirichlet problem.
//!
//! The velocity is represented as a double-layer potential `u = D[φ]`.
//! Matching the boundary data gives, at every step `t_n`, the second-kind
//! system
//!
//! ```text
//! −½ φ(·, t_n) + D*[φ](·, t_n) = f(·, t_n)
//! ```
//!
//! where `D*` is the on-surface (principal value) double layer. Only the
//! asymptotic slice, the near slice's weight on `φ(·, t_n)` and the
//! pressure term touch the unknown; everything else goes to the right side.
//!
//! A double layer is divergence-free, so the left side always has zero net
//! flux and the operator is rank-one deficient. Each step therefore solves
//! the completed system `−½φ + D*[φ] + n ∫_Γ φ·n ds = f`; taking the flux
//! of both sides shows that for flux-free data its solution has
//! `∫ φ·n = 0` and solves the original equation.

mod exact;
mod gmres;

use std::sync::Arc;
use std::time::Instant;

pub use exact::{exact_pressure, exact_solution, vortex_centers, VORTEX_RADIUS};
pub use gmres::{gmres, GmresOutcome};

use crate::error::{Error, Result};
use crate::geometry::{snapshot, MovingBoundary};
use crate::layerpot::{
    dlp_asym_tensors, history_eval, potential_eval, DensityHistory, HistoryConfig, LayerKind, NearOperator,
    NearRuleConfig, NearWindow, PressureOperator, SplitConfig, Target,
};
use crate::linalg::Vec2;
use crate::quadrature::AlpertOrder;
use crate::spectral::Spectral;

/// Boundary data `f(x, t)` evaluated at boundary points.
pub type BoundaryData = Arc<dyn Fn(Vec2, f64) -> Result<Vec2> + Send + Sync>;

#[derive(Clone)]
pub struct DirichletProblem {
    pub boundary: Arc<dyn MovingBoundary>,
    pub data: BoundaryData,
    pub final_time: f64,
    /// Data come from [`exact_solution`], so errors can be measured.
    pub manufactured: bool,
}

impl std::fmt::Debug for DirichletProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DirichletProblem")
            .field("final_time", &self.final_time)
            .field("manufactured", &self.manufactured)
            .finish_non_exhaustive()
    }
}

impl DirichletProblem {
    /// Boundary data taken from the manufactured solution.
    pub fn manufactured(boundary: Arc<dyn MovingBoundary>, final_time: f64) -> Self {
        DirichletProblem { boundary, data: Arc::new(exact_solution), final_time, manufactured: true }
    }

    pub fn new(boundary: Arc<dyn MovingBoundary>, data: BoundaryData, final_time: f64) -> Self {
        DirichletProblem { boundary, data, final_time, manufactured: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Boundary points.
    pub points: usize,
    /// Width of the local window in time steps: `δ = delta_mult · Δt`.
    pub delta_mult: usize,
    /// Width of the asymptotic slice; also the accuracy the quadratures aim for.
    pub eps: f64,
    /// Gauss nodes over `[ln ε, ln δ]`; `None` uses `⌈10 log₁₀(1/ε)⌉`.
    pub n_gl: Option<usize>,
    /// Temporal interpolation order (number of levels per stencil).
    pub time_order: usize,
    pub spatial_order: AlpertOrder,
    pub near: NearRuleConfig,
    pub history: HistoryConfig,
    pub upsample: usize,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            points: 200,
            delta_mult: 1,
            eps: 1e-12,
            n_gl: None,
            time_order: 4,
            spatial_order: AlpertOrder::Sixteen,
            near: NearRuleConfig::default(),
            history: HistoryConfig::default(),
            upsample: 8,
            tol: 1e-12,
            max_iter: 100,
        }
    }
}

impl SolverConfig {
    /// Splitting parameters for step size `dt`.
    pub fn split(&self, dt: f64) -> Result<SplitConfig> {
        let mut s = SplitConfig::new(self.eps, self.delta_mult as f64 * dt)?;
        if let Some(n) = self.n_gl {
            s.n_gl = n;
        }
        s.order = self.spatial_order;
        s.near = self.near;
        s.history = self.history;
        s.upsample = self.upsample;
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self, dt: f64) -> Result<()> {
        if self.points < self.spatial_order.min_points() || self.points % 2 == 1 {
            return Err(Error::Config(format!(
                "M = {} must be even and at least {}",
                self.points,
                self.spatial_order.min_points()
            )));
        }
        if self.delta_mult == 0 {
            return Err(Error::Config("delta multiplier must be at least 1".into()));
        }
        if !(self.eps > 0.0 && self.eps < dt) {
            return Err(Error::Config(format!("need 0 < eps < dt, got eps={}, dt={dt}", self.eps)));
        }
        if !(1..=8).contains(&self.time_order) {
            return Err(Error::Config(format!("time order {} outside 1..=8", self.time_order)));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) || self.max_iter == 0 {
            return Err(Error::Config("solver tolerance must lie in (0, 1) with max_iter ≥ 1".into()));
        }
        self.split(dt).map(|_| ())
    }
}

/// Per-step solver record.
#[derive(Debug, Clone, PartialEq)]
pub struct StepReport {
    pub step: usize,
    pub iterations: usize,
    pub residual: f64,
    pub seconds: f64,
}

/// Density history after `n` steps.
#[derive(Debug, Clone)]
pub struct MarchState {
    pub step: usize,
    pub history: DensityHistory,
    pub reports: Vec<StepReport>,
    pub config: SolverConfig,
}

impl MarchState {
    pub fn dt(&self) -> f64 {
        self.history.dt()
    }

    pub fn time(&self) -> f64 {
        self.step as f64 * self.dt()
    }

    pub fn density(&self) -> &[Vec2] {
        self.history.level(self.step)
    }
}

fn flatten(v: &[Vec2]) -> Vec<f64> {
    v.iter().flat_map(|p| [p.x, p.y]).collect()
}

fn unflatten(v: &[f64]) -> Vec<Vec2> {
    v.chunks_exact(2).map(|c| Vec2::new(c[0], c[1])).collect()
}

/// March from `t = 0` (zero density) to `T` in `n_steps` equal steps.
pub fn march(problem: &DirichletProblem, n_steps: usize, cfg: &SolverConfig) -> Result<MarchState> {
    march_with(problem, n_steps, cfg, |_| {})
}

/// [`march`] with a callback after every step.
pub fn march_with<F: FnMut(&StepReport)>(
    problem: &DirichletProblem,
    n_steps: usize,
    cfg: &SolverConfig,
    mut on_step: F,
) -> Result<MarchState> {
    if !(problem.final_time > 0.0 && problem.final_time.is_finite()) {
        return Err(Error::Config(format!("final time must be positive, got {}", problem.final_time)));
    }
    if n_steps < cfg.time_order {
        return Err(Error::Config(format!("need at least {} steps, got {n_steps}", cfg.time_order)));
    }
    let dt = problem.final_time / n_steps as f64;
    cfg.validate(dt)?;
    let split = cfg.split(dt)?;
    let m = cfg.points;
    let b = problem.boundary.as_ref();
    let spec = Spectral::new(m)?;
    let all: Vec<usize> = (0..m).collect();

    let mut history = DensityHistory::new(dt, m, cfg.time_order)?;
    history.push(vec![Vec2::ZERO; m])?;
    let mut state = MarchState { step: 0, history, reports: Vec::with_capacity(n_steps), config: *cfg };

    for n in 1..=n_steps {
        let clock = Instant::now();
        let t = n as f64 * dt;
        let snap = snapshot(b, m, t)?;
        let mut rhs = Vec::with_capacity(m);
        for &x in &snap.points {
            rhs.push((problem.data)(x, t)?);
        }

        let win = NearWindow { t, u_lo: split.eps, u_hi: split.delta.min(t), dt, order: cfg.time_order, latest: n };
        let near = NearOperator::build(b, m, &win, LayerKind::Double, &all, &split)?;
        let known = near.apply_history(&state.history, near.levels().start..n);
        let hist = history_eval(
            b,
            state.history.levels(),
            dt,
            cfg.time_order,
            t,
            split.delta,
            &snap.points,
            LayerKind::Double,
            &split.history,
        )?;
        for i in 0..m {
            rhs[i] = rhs[i] - known[i] - hist[i];
        }

        let pressure = PressureOperator::build(b, m, t, &all, split.order)?;
        let (a, bt) = dlp_asym_tensors(&snap, split.eps);
        let apply = |x: &[f64]| -> Vec<f64> {
            let phi = unflatten(x);
            let d = spec.derivative(&phi);
            let nr = near.apply_level(n, &phi);
            let pr = pressure.apply(&phi);
            let flux: f64 = (0..m).map(|i| phi[i].dot(snap.normals[i]) * snap.weights[i]).sum();
            let out: Vec<Vec2> = (0..m)
                .map(|i| {
                    let phi_s = d[i] * (1.0 / snap.speed[i]);
                    phi[i] * -0.5 + a[i].apply(phi[i]) + bt[i].apply(phi_s) + nr[i] + pr[i] + snap.normals[i] * flux
                })
                .collect();
            flatten(&out)
        };

        let guess = extrapolate(&state.history, n);
        let rhs = flatten(&rhs);
        let sol = gmres(&apply, &rhs, &flatten(&guess), cfg.tol, cfg.max_iter);
        let residual = *sol.residuals.last().unwrap_or(&0.0);
        if !sol.converged {
            return Err(Error::NotConverged { step: n, iterations: sol.iterations, residual, history: sol.residuals });
        }
        let phi = unflatten(&sol.x);
        if let Some(index) = phi.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite { index, node: snap.theta[index] });
        }
        state.history.push(phi)?;
        state.step = n;
        let report = StepReport { step: n, iterations: sol.iterations, residual, seconds: clock.elapsed().as_secs_f64() };
        on_step(&report);
        state.reports.push(report);
    }
    Ok(state)
}

/// Initial guess for level `n` by polynomial extrapolation of the last
/// (up to four) levels.
fn extrapolate(hist: &DensityHistory, n: usize) -> Vec<Vec2> {
    const W: [&[f64]; 4] = [&[1.0], &[2.0, -1.0], &[3.0, -3.0, 1.0], &[4.0, -6.0, 4.0, -1.0]];
    let k = n.min(4);
    let w = W[k - 1];
    let mut out = vec![Vec2::ZERO; hist.grid_size()];
    for (j, c) in w.iter().enumerate() {
        for (o, v) in out.iter_mut().zip(hist.level(n - 1 - j)) {
            *o += *v * *c;
        }
    }
    out
}

/// Velocity `u = D[φ](x, t)` at interior points.
pub fn eval_interior(
    boundary: &dyn MovingBoundary,
    state: &MarchState,
    targets: &[Vec2],
    t: f64,
) -> Result<Vec<Vec2>> {
    let split = state.config.split(state.dt())?;
    let tg: Vec<Target> = targets.iter().map(|&x| Target::Point(x)).collect();
    potential_eval(boundary, &state.history, &tg, t, LayerKind::Double, &split)
}
