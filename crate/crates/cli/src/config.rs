use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::Deserialize;
use unsteady_stokes::geometry::BuiltinBoundary;
use unsteady_stokes::layerpot::LayerKind;
use unsteady_stokes::quadrature::AlpertOrder;
use unsteady_stokes::solver::SolverConfig;

/// Largest `N·M²` `solve` runs without `force`.
pub const WORK_BUDGET: f64 = 160.0 * 200.0 * 200.0;

/// Everything one command needs. Loaded from TOML, then overridden by flags.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub boundary: String,
    pub kind: String,
    /// Boundary points M.
    pub points: usize,
    /// Time-step counts N to run.
    pub steps: Vec<usize>,
    pub final_time: f64,
    /// Asymptotic-slice widths swept by `validate-asym`.
    pub eps: Vec<f64>,
    /// Asymptotic-slice width used by `solve`.
    pub solve_eps: f64,
    pub delta_mult: usize,
    /// Spatial singular-rule order (4, 8 or 16).
    pub order: usize,
    pub time_order: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub threads: Option<usize>,
    pub force: bool,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            boundary: "ellipse-translate".into(),
            kind: "slp".into(),
            points: 200,
            steps: vec![20, 40, 80, 160],
            final_time: 1.0,
            eps: vec![1e-2, 1e-3, 1e-4, 1e-5],
            solve_eps: 1e-12,
            delta_mult: 1,
            order: 16,
            time_order: 4,
            tol: 1e-12,
            max_iter: 100,
            threads: None,
            force: false,
            out: None,
        }
    }
}

pub fn parse_kind(s: &str) -> anyhow::Result<LayerKind> {
    match s {
        "slp" => Ok(LayerKind::Single),
        "dlp" => Ok(LayerKind::Double),
        _ => bail!("unknown layer kind '{s}' (expected slp or dlp)"),
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> anyhow::Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_toml(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn boundary(&self) -> anyhow::Result<BuiltinBoundary> {
        Ok(BuiltinBoundary::from_name(&self.boundary)?)
    }

    pub fn kind(&self) -> anyhow::Result<LayerKind> {
        parse_kind(&self.kind)
    }

    pub fn order(&self) -> anyhow::Result<AlpertOrder> {
        Ok(AlpertOrder::from_order(self.order)?)
    }

    pub fn solver_config(&self) -> anyhow::Result<SolverConfig> {
        Ok(SolverConfig {
            points: self.points,
            delta_mult: self.delta_mult,
            eps: self.solve_eps,
            time_order: self.time_order,
            spatial_order: self.order()?,
            tol: self.tol,
            max_iter: self.max_iter,
            ..SolverConfig::default()
        })
    }

    /// Full validation for `command`, before any computation.
    pub fn validate_for(&self, command: &str) -> anyhow::Result<()> {
        self.boundary()?;
        let order = self.order()?;
        if let Some(0) = self.threads {
            bail!("--threads must be at least 1");
        }
        match command {
            "validate-asym" => {
                self.kind()?;
                if self.eps.is_empty() {
                    bail!("eps list is empty");
                }
                if self.points % 2 == 1 || self.points < order.min_points() {
                    bail!("M = {} must be even and at least {}", self.points, order.min_points());
                }
                if let Some(e) = self.eps.iter().find(|&&e| !(e > f64::EPSILON && e < crate::ASYM_FINAL_TIME)) {
                    bail!("eps = {e} outside (machine epsilon, T = {})", crate::ASYM_FINAL_TIME);
                }
            }
            "solve" => {
                if self.steps.is_empty() {
                    bail!("steps list is empty");
                }
                if !(self.final_time > 0.0 && self.final_time.is_finite()) {
                    bail!("final time must be positive, got {}", self.final_time);
                }
                let solver = self.solver_config()?;
                for &n in &self.steps {
                    if n < self.time_order {
                        bail!("N = {n} is below the time order {}", self.time_order);
                    }
                    solver.validate(self.final_time / n as f64).with_context(|| format!("N = {n}"))?;
                    let work = n as f64 * (self.points as f64).powi(2);
                    if work > WORK_BUDGET && !self.force {
                        bail!("N·M² = {work:e} exceeds the work budget {WORK_BUDGET:e}; pass --force to run anyway");
                    }
                }
            }
            "identities" => {}
            other => bail!("unknown command '{other}'"),
        }
        Ok(())
    }
}
