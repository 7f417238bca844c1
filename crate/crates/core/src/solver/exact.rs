//! Manufactured exact solution of the unsteady Stokes equations.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::Vec2;

/// Radius of the circle carrying the five vortex centres.
pub const VORTEX_RADIUS: f64 = 2.0;

/// Vortex centres `y_j = 2(cos(2πj/5), sin(2πj/5))`, `j = 0..4`.
pub fn vortex_centers() -> [Vec2; 5] {
    std::array::from_fn(|j| {
        let a = 2.0 * PI * j as f64 / 5.0;
        Vec2::new(VORTEX_RADIUS * a.cos(), VORTEX_RADIUS * a.sin())
    })
}

fn g(t: f64) -> f64 {
    (-1.0 / t).exp() * (20.0 * t).sin()
}

fn g_prime(t: f64) -> f64 {
    (-1.0 / t).exp() * ((20.0 * t).sin() / (t * t) + 20.0 * (20.0 * t).cos())
}

/// `u = Σ_j t^{−2} e^{−|x−y_j|²/(4t)} (x₂−y_{j2}, −(x₁−y_{j1}))
///    + e^{−1/t} sin(20t) e^{x₁} (cos x₂, −sin x₂)`.
///
/// The vortex sum is the perpendicular gradient of a heat kernel and the
/// second term a potential flow, so `u` is divergence-free and solves the
/// unsteady Stokes equations with the pressure of [`exact_pressure`].
pub fn exact_solution(x: Vec2, t: f64) -> Result<Vec2> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("exact solution needs t > 0, got {t}")));
    }
    let mut u = Vec2::ZERO;
    for y in vortex_centers() {
        let d = x - y;
        u += Vec2::new(d.y, -d.x) * ((-d.norm_sq() / (4.0 * t)).exp() / (t * t));
    }
    let e = g(t) * x.x.exp();
    Ok(u + Vec2::new(e * x.y.cos(), -e * x.y.sin()))
}

/// Pressure `p = −g'(t) e^{x₁} cos x₂` with `g(t) = e^{−1/t} sin 20t`
/// (up to an additive function of time).
pub fn exact_pressure(x: Vec2, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("exact pressure needs t > 0, got {t}")));
    }
    Ok(-g_prime(t) * x.x.exp() * x.y.cos())
}
