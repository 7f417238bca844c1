//! Experiment drivers behind the `ustokes` binary.
//!
//! Each command validates its whole configuration first, then computes,
//! and returns a report that renders to CSV with `#` metadata lines.

mod config;
mod csv;

use std::time::Instant;

use unsteady_stokes::geometry::{snapshot, BuiltinBoundary, MovingBoundary};
use unsteady_stokes::layerpot::{
    line_identities, moment_identities, potential_eval, DensityHistory, IdentityCheck, LayerKind, SplitConfig, Target,
};
use unsteady_stokes::linalg::relative_l2;
use unsteady_stokes::solver::{eval_interior, exact_solution, march, DirichletProblem, SolverConfig};
use unsteady_stokes::Vec2;

pub use config::{parse_kind, RunConfig};
pub use csv::Table;

/// Identity checks pass below this absolute error.
pub const IDENTITY_TOL: f64 = 1e-10;

/// ε of the moment identities.
pub const MOMENT_EPS: f64 = 1e-4;

/// Final time of the asymptotic validation.
pub const ASYM_FINAL_TIME: f64 = 0.075;

/// Reading of the validation density, recorded in the output metadata.
pub const ASYM_DENSITY: &str = "phi = (cos(20*y2(theta,T)), 3*y1(theta,T)^3), constant in time";

pub fn version_string() -> String {
    format!("ustokes {} ({})", env!("CARGO_PKG_VERSION"), option_env!("USTOKES_GIT_DESCRIBE").unwrap_or("untracked"))
}

#[derive(Debug, Clone)]
pub struct IdentitiesReport {
    pub checks: Vec<IdentityCheck>,
    pub seconds: f64,
}

impl IdentitiesReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.abs_error() <= IDENTITY_TOL)
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(&["identity", "value", "target", "abs_error", "pass"]);
        t.meta(&version_string());
        t.meta(&format!("moment identities at eps = {MOMENT_EPS:e}; pass threshold {IDENTITY_TOL:e}"));
        t.meta(&format!("wall_time_s = {:.3}", self.seconds));
        for c in &self.checks {
            t.row(vec![
                c.name.to_string(),
                format!("{:.17e}", c.value),
                format!("{:.17e}", c.target),
                format!("{:.3e}", c.abs_error()),
                (c.abs_error() <= IDENTITY_TOL).to_string(),
            ]);
        }
        t
    }
}

/// The four line integrals and four moments the expansions rest on.
pub fn cmd_identities() -> anyhow::Result<IdentitiesReport> {
    let clock = Instant::now();
    let mut checks = line_identities()?;
    checks.extend(moment_identities(MOMENT_EPS)?);
    Ok(IdentitiesReport { checks, seconds: clock.elapsed().as_secs_f64() })
}

#[derive(Debug, Clone)]
pub struct AsymReport {
    pub kind: LayerKind,
    pub boundary: BuiltinBoundary,
    pub points: usize,
    /// `(ε, relative l² error)` per row.
    pub rows: Vec<(f64, f64)>,
    /// Least-squares slope of log error against log ε.
    pub slope: Option<f64>,
    pub seconds: f64,
}

impl AsymReport {
    pub fn table(&self) -> Table {
        let mut t = Table::new(&["epsilon", "rel_l2_error"]);
        t.meta(&version_string());
        t.meta(&format!(
            "validate-asym kind={} boundary={} M={} T={ASYM_FINAL_TIME}",
            kind_name(self.kind),
            self.boundary.name(),
            self.points
        ));
        t.meta(&format!("density: {ASYM_DENSITY}"));
        t.meta(&format!("reference: near-part rules on [0, T - eps_M], eps_M = {:e}", f64::EPSILON));
        t.meta(&format!("wall_time_s = {:.3}", self.seconds));
        for &(e, err) in &self.rows {
            t.row(vec![format!("{e:e}"), format!("{err:.6e}")]);
        }
        t.meta(&match self.slope {
            Some(s) => format!("slope = {s:.4}"),
            None => "slope =".to_string(),
        });
        t
    }
}

pub fn kind_name(kind: LayerKind) -> &'static str {
    match kind {
        LayerKind::Single => "slp",
        LayerKind::Double => "dlp",
    }
}

/// Least-squares slope of `ln y` against `ln x`; `None` for fewer than two points.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() < 2 || xs.len() != ys.len() {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// The validation density sampled on the boundary at `t = T`.
pub fn asym_density(b: &dyn MovingBoundary, m: usize, t: f64) -> anyhow::Result<Vec<Vec2>> {
    let snap = snapshot(b, m, t)?;
    Ok(snap.points.iter().map(|y| Vec2::new((20.0 * y.y).cos(), 3.0 * y.x.powi(3))).collect())
}

/// Layer potential at all nodes at `T`, over `[0, T]`, with asymptotic
/// slice `eps` (the history part is empty since `δ = T`).
fn layer_at_nodes(
    b: &dyn MovingBoundary,
    hist: &DensityHistory,
    kind: LayerKind,
    eps: f64,
    order: unsteady_stokes::quadrature::AlpertOrder,
) -> anyhow::Result<Vec<Vec2>> {
    let mut cfg = SplitConfig::new(eps, ASYM_FINAL_TIME)?;
    cfg.order = order;
    let targets: Vec<Target> = (0..hist.grid_size()).map(Target::Node).collect();
    Ok(potential_eval(b, hist, &targets, ASYM_FINAL_TIME, kind, &cfg)?)
}

/// Hybrid (asymptotic + near) against the reference without asymptotics,
/// one row per ε.
pub fn cmd_validate_asym(cfg: &RunConfig) -> anyhow::Result<AsymReport> {
    cfg.validate_for("validate-asym")?;
    let clock = Instant::now();
    let boundary = cfg.boundary()?;
    let kind = cfg.kind()?;
    let b = boundary.boundary();
    let m = cfg.points;
    let phi = asym_density(b.as_ref(), m, ASYM_FINAL_TIME)?;
    let hist = DensityHistory::constant(ASYM_FINAL_TIME, phi)?;
    let order = cfg.order()?;
    let reference = layer_at_nodes(b.as_ref(), &hist, kind, f64::EPSILON, order)?;
    let mut rows = Vec::new();
    for &eps in &cfg.eps {
        let hybrid = layer_at_nodes(b.as_ref(), &hist, kind, eps, order)?;
        rows.push((eps, relative_l2(&hybrid, &reference)));
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = rows.iter().copied().unzip();
    Ok(AsymReport { kind, boundary, points: m, slope: fit_slope(&xs, &ys), rows, seconds: clock.elapsed().as_secs_f64() })
}

/// `rings × angles` points on scaled copies of an elliptical boundary,
/// at fractions 0.15, 0.3, 0.45, 0.6 of the semi-axes.
pub fn interior_test_points(boundary: BuiltinBoundary, t: f64) -> Vec<Vec2> {
    let e = boundary.curve();
    let (cx, cy, a, b) = (e.center_x.at(t), e.center_y.at(t), e.semi_x.at(t), e.semi_y.at(t));
    let mut pts = Vec::with_capacity(100);
    for rho in [0.15, 0.3, 0.45, 0.6] {
        for j in 0..25 {
            let al = 2.0 * std::f64::consts::PI * j as f64 / 25.0;
            pts.push(Vec2::new(cx + rho * a * al.cos(), cy + rho * b * al.sin()));
        }
    }
    pts
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveRow {
    pub steps: usize,
    pub dt: f64,
    /// Relative l² error at the test points, or the failure message.
    pub error: Result<f64, String>,
    pub ratio: Option<f64>,
    pub max_iterations: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub boundary: BuiltinBoundary,
    pub points: usize,
    pub final_time: f64,
    pub rows: Vec<SolveRow>,
    pub config: SolverConfig,
}

impl SolveReport {
    pub fn errors(&self) -> Vec<Option<f64>> {
        self.rows.iter().map(|r| r.error.as_ref().ok().copied()).collect()
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(&["N", "dt", "E", "r", "max_iterations", "seconds", "status"]);
        t.meta(&version_string());
        t.meta(&format!(
            "solve boundary={} M={} T={} eps={:e} delta_mult={} time_order={} spatial_order={} tol={:e}",
            self.boundary.name(),
            self.points,
            self.final_time,
            self.config.eps,
            self.config.delta_mult,
            self.config.time_order,
            self.config.spatial_order.order(),
            self.config.tol
        ));
        t.meta("E: relative l2 error at 100 interior points (4 scaled ellipses x 25 angles) at t = T");
        for r in &self.rows {
            let (e, status) = match &r.error {
                Ok(e) => (format!("{e:.6e}"), "ok".to_string()),
                Err(msg) => ("".to_string(), format!("error: {}", msg.replace(',', ";"))),
            };
            t.row(vec![
                r.steps.to_string(),
                format!("{:e}", r.dt),
                e,
                r.ratio.map(|x| format!("{x:.3}")).unwrap_or_default(),
                r.max_iterations.to_string(),
                format!("{:.2}", r.seconds),
                status,
            ]);
        }
        t
    }
}

/// One manufactured-solution run: march to `T` and measure the interior error.
pub fn solve_once(
    boundary: BuiltinBoundary,
    steps: usize,
    final_time: f64,
    cfg: &SolverConfig,
) -> Result<(f64, usize), unsteady_stokes::Error> {
    let b = boundary.boundary();
    let problem = DirichletProblem::manufactured(b.clone(), final_time);
    let state = march(&problem, steps, cfg)?;
    let pts = interior_test_points(boundary, final_time);
    let u = eval_interior(b.as_ref(), &state, &pts, final_time)?;
    let exact = pts.iter().map(|&x| exact_solution(x, final_time)).collect::<Result<Vec<_>, _>>()?;
    let its = state.reports.iter().map(|r| r.iterations).max().unwrap_or(0);
    Ok((relative_l2(&u, &exact), its))
}

/// Convergence study over the step counts in `cfg.steps`.
pub fn cmd_solve(cfg: &RunConfig) -> anyhow::Result<SolveReport> {
    cfg.validate_for("solve")?;
    let boundary = cfg.boundary()?;
    let solver = cfg.solver_config()?;
    let mut rows: Vec<SolveRow> = Vec::new();
    for &n in &cfg.steps {
        let clock = Instant::now();
        let res = solve_once(boundary, n, cfg.final_time, &solver);
        let prev = rows.last().and_then(|r: &SolveRow| r.error.as_ref().ok().copied());
        let (error, its) = match res {
            Ok((e, its)) => (Ok(e), its),
            Err(e) => (Err(e.to_string()), 0),
        };
        let ratio = match (prev, &error) {
            (Some(p), Ok(e)) if *e > 0.0 => Some(p / e),
            _ => None,
        };
        rows.push(SolveRow {
            steps: n,
            dt: cfg.final_time / n as f64,
            error,
            ratio,
            max_iterations: its,
            seconds: clock.elapsed().as_secs_f64(),
        });
    }
    Ok(SolveReport { boundary, points: cfg.points, final_time: cfg.final_time, rows, config: solver })
}
