//! Slow, independent reference integrators for checking `unsteady-stokes`.
//!
//! Nothing here shares quadrature code with the main crate: integrals are
//! computed by globally adaptive Gauss–Kronrod with geometric grading
//! toward endpoint singularities, principal values by symmetric puncture
//! and Richardson extrapolation. Kernels and boundaries are taken from the
//! main crate, since those are checked separately against closed forms.

mod adaptive;
mod pv;
mod spacetime;

pub use adaptive::{graded, integrate, integrate_line, Estimate, Value};
pub use pv::{pv_integral, pv_periodic};
pub use spacetime::{near_time_integrals_oracle, pressure_oracle, space_time_oracle};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("invalid oracle configuration: {0}")]
    Config(String),
    #[error("adaptive quadrature stalled: error estimate {estimate:e} above tolerance {tol:e}")]
    NotConverged { estimate: f64, tol: f64 },
    #[error(transparent)]
    Core(#[from] unsteady_stokes::Error),
}

pub type Result<T> = std::result::Result<T, OracleError>;

/// Accuracy controls shared by all oracles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Absolute error target.
    pub tol: f64,
    /// Maximum bisection depth of any subinterval.
    pub max_depth: u32,
    /// Ratio of successive panels when grading toward an endpoint.
    pub grading: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { tol: 1e-13, max_depth: 40, grading: 0.25 }
    }
}

impl OracleConfig {
    pub fn with_tol(tol: f64) -> Result<Self> {
        let c = OracleConfig { tol, ..Default::default() };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol >= 1e-13 && self.tol.is_finite()) {
            return Err(OracleError::Config(format!("tolerance {} is below the 1e-13 roundoff floor", self.tol)));
        }
        if self.max_depth == 0 || self.max_depth > 60 {
            return Err(OracleError::Config(format!("max_depth {} outside 1..=60", self.max_depth)));
        }
        if !(self.grading > 0.0 && self.grading < 1.0) {
            return Err(OracleError::Config(format!("grading ratio {} outside (0, 1)", self.grading)));
        }
        Ok(())
    }
}
