//! Layer potentials for the two-dimensional unsteady Stokes equations on
//! smooth closed boundaries that move in time, and an implicit high-order
//! time-marching solver for the velocity (Dirichlet) problem.
//!
//! A layer potential at time `t` is split by lag `u = t − τ` into
//!
//! * `[0, ε]` — replaced by leading-order closed forms ([`layerpot::slp_asym`],
//!   [`layerpot::dlp_asym`]);
//! * `[ε, δ]` — nearly singular; integrated in `z = ln u` and with a graded
//!   spatial rule ([`layerpot::NearOperator`]);
//! * `[δ, t]` — smooth history ([`layerpot::history_eval`]);
//!
//! plus, for the double layer, the instantaneous pressurelet term evaluated
//! in the principal-value sense ([`layerpot::PressureOperator`]).
//!
//! ```
//! use unsteady_stokes::kernels::stokeslet;
//! use unsteady_stokes::linalg::Vec2;
//!
//! let g = stokeslet(Vec2::ZERO, 1.0).unwrap();
//! assert!((g.m[0][0] - 1.0 / (8.0 * std::f64::consts::PI)).abs() < 1e-15);
//! ```

pub mod error;
pub mod geometry;
pub mod kernels;
pub mod layerpot;
pub mod linalg;
pub mod quadrature;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};
pub use linalg::{Tensor2, Vec2};
