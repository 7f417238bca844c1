use std::f64::consts::PI;

use unsteady_stokes::geometry::MovingBoundary;
use unsteady_stokes::kernels::{dlp_kernel, pressurelet_kernel, stokeslet};
use unsteady_stokes::layerpot::{LayerKind, NearTimeIntegrals};
use unsteady_stokes::Vec2;

use crate::adaptive::{integrate, Value};
use crate::pv::pv_periodic;
use crate::{OracleConfig, OracleError, Result};

/// `φ₁, φ₂` by their defining formulas, with a long Taylor series where
/// the formulas cancel.
fn phis(lambda: f64) -> (f64, f64) {
    if lambda < 1.0 {
        let (mut p1, mut p2) = (0.0, 0.0);
        let mut term = 1.0; // (−λ)^m / m!
        for m in 0..30 {
            let mf = m as f64;
            p1 += term / (mf + 1.0);
            p2 += term * (mf + 1.0) / ((mf + 1.0) * (mf + 2.0));
            term *= -lambda / (mf + 1.0);
        }
        (p1, p2)
    } else {
        let e = (-lambda).exp();
        ((1.0 - e) / lambda, (1.0 - e - lambda * e) / (lambda * lambda))
    }
}

/// The four transformed near-part time integrals at distance `dist`,
/// scaled for comparison at absolute accuracy: `I₂` and `I₄` grow like
/// `1/ε` at `dist = 0` and are returned multiplied by `ε`.
pub fn near_time_integrals_oracle(dist: f64, eps: f64, delta: f64, cfg: &OracleConfig) -> Result<NearTimeIntegrals> {
    if !(eps > 0.0 && eps < delta) {
        return Err(OracleError::Config(format!("need 0 < eps < delta, got {eps}, {delta}")));
    }
    let q = 0.25 * dist * dist;
    let (za, zb) = (eps.ln(), delta.ln());
    let lam = |z: f64| q * (-z).exp();
    let i1 = integrate(|z| (-lam(z)).exp(), za, zb, cfg)?.value;
    let i2 = integrate(|z| (-lam(z)).exp() * (-z).exp() * eps, za, zb, cfg)?.value;
    let i3 = integrate(|z| phis(lam(z)).0, za, zb, cfg)?.value;
    let i4 = integrate(|z| phis(lam(z)).1 * (-z).exp() * eps, za, zb, cfg)?.value;
    Ok(NearTimeIntegrals { i1, i2, i3, i4 })
}

/// `∫_{u_lo}^{u_hi} ∫_Γ(t−u) K(x − y, u) φ(y, t−u) ds_y du` at the
/// boundary point `x = y(θ0, t)`, by nested adaptive quadrature: outer in
/// `ln u`, inner over the period with panels graded toward `θ0` at the
/// heat-kernel width `√u`.
///
/// `density(θ, τ)` gives the density at parameter `θ` and time `τ`. For the
/// double layer the pressure term is not included.
#[allow(clippy::too_many_arguments)]
pub fn space_time_oracle(
    b: &dyn MovingBoundary,
    kind: LayerKind,
    density: &dyn Fn(f64, f64) -> Vec2,
    theta0: f64,
    t: f64,
    u_lo: f64,
    u_hi: f64,
    cfg: &OracleConfig,
) -> Result<Vec2> {
    cfg.validate()?;
    if !(u_lo > 0.0 && u_lo < u_hi && u_hi <= t) {
        return Err(OracleError::Config(format!("bad lag range [{u_lo}, {u_hi}] at t = {t}")));
    }
    let x = b.position(theta0, t);
    let (za, zb) = (u_lo.ln(), u_hi.ln());
    let zlen = zb - za;
    let mut failure = None;
    let outer = integrate(
        |z: f64| {
            let u = z.exp();
            let tau = t - u;
            let kernel = |th: f64| -> Vec2 {
                let y = b.position(th, tau);
                let yt = b.d_theta(th, tau);
                let r = x - y;
                let phi = density(th, tau);
                let k = match kind {
                    LayerKind::Single => stokeslet(r, u).map(|g| g * yt.norm()),
                    LayerKind::Double => dlp_kernel(r, yt.rot_cw(), u),
                };
                k.map(|k| k.apply(phi)).unwrap_or(Vec2::new(f64::NAN, f64::NAN))
            };
            let width = u.sqrt() / b.d_theta(theta0, t).norm();
            let inner_tol = (0.5 * cfg.tol / (u * zlen)).max(1e-13);
            let inner_cfg = OracleConfig { tol: inner_tol, ..*cfg };
            match folded_graded(&kernel, theta0, width, &inner_cfg) {
                Ok(v) => v * u,
                Err(e) => {
                    failure.get_or_insert(e);
                    Vec2::ZERO
                }
            }
        },
        za,
        zb,
        &OracleConfig { tol: 0.5 * cfg.tol, ..*cfg },
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(outer.value)
}

/// `∫_{θ0−π}^{θ0+π} f` with panels `[0, w], [w, 2w], [2w, 4w], …` on each side.
fn folded_graded<T: Value>(f: &dyn Fn(f64) -> T, theta0: f64, width: f64, cfg: &OracleConfig) -> Result<T> {
    let mut cuts = vec![0.0];
    let mut s = width.min(PI);
    while s < PI {
        cuts.push(s);
        s *= 2.0;
    }
    cuts.push(PI);
    let n = cuts.len() - 1;
    let sub = OracleConfig { tol: (cfg.tol / n as f64).max(1e-13), ..*cfg };
    let mut acc = T::ZERO;
    for w in cuts.windows(2) {
        acc = acc + integrate(|s| f(theta0 + s) + f(theta0 - s), w[0], w[1], &sub)?.value;
    }
    Ok(acc)
}

/// Principal value `PV ∫_Γ(t) (r⊗n)/(2π|r|²) φ ds` at `x = y(θ0, t)`.
pub fn pressure_oracle(
    b: &dyn MovingBoundary,
    density: &dyn Fn(f64) -> Vec2,
    theta0: f64,
    t: f64,
    cfg: &OracleConfig,
) -> Result<Vec2> {
    let x = b.position(theta0, t);
    pv_periodic(
        |th: f64| {
            let r = x - b.position(th, t);
            match pressurelet_kernel(r, b.d_theta(th, t).rot_cw()) {
                Ok(k) => k.apply(density(th)),
                Err(_) => Vec2::ZERO,
            }
        },
        theta0,
        cfg,
    )
}
