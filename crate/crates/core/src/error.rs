use thiserror::Error;

/// Errors produced by the geometry, quadrature, potential and solver layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate parametrization at theta={theta}, t={t}: |y_theta| = {speed:e}")]
    InvalidGeometry { theta: f64, t: f64, speed: f64 },

    #[error("kernel sampled at its singular point")]
    SingularPoint,

    #[error("non-finite integrand value at node {index} (x = {node})")]
    NonFinite { index: usize, node: f64 },

    #[error("unsupported target: {0}")]
    UnsupportedTarget(String),

    #[error("target {index} lies {distance:e} from the boundary; close evaluation needs at least {required:e}")]
    TooClose { index: usize, distance: f64, required: f64 },

    #[error("iterative solve did not converge at step {step}: residual {residual:e} after {iterations} iterations")]
    NotConverged { step: usize, iterations: usize, residual: f64, history: Vec<f64> },
}

pub type Result<T> = std::result::Result<T, Error>;
