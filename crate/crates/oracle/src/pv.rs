use crate::adaptive::{integrate, Value};
use crate::{OracleConfig, OracleError, Result};

/// Principal value `PV ∫_{x0−R}^{x0+R} f` for `f` with a simple pole
/// (plus smooth part) at `x0`.
///
/// The symmetric puncture `I(ρ) = ∫_{ρ<|x−x0|<R} f` differs from the
/// principal value by odd powers of `ρ` only, so four punctures
/// `ρ₀, ρ₀/2, ρ₀/4, ρ₀/8` and Richardson elimination of `ρ, ρ³, ρ⁵`
/// give the limit.
pub fn pv_integral<T: Value, F: FnMut(f64) -> T>(mut f: F, x0: f64, half_width: f64, cfg: &OracleConfig) -> Result<T> {
    cfg.validate()?;
    if !(half_width > 0.0) {
        return Err(OracleError::Config("principal-value interval must have positive width".into()));
    }
    let rho0 = (0.05 * half_width).min(0.05);
    let sub = OracleConfig { tol: cfg.tol / 8.0, ..*cfg };
    let mut folded = |s: f64| f(x0 + s) + f(x0 - s);
    let outer = integrate_unvalidated(&mut folded, rho0, half_width, &sub)?;
    // Shells between successive punctures.
    let mut levels = vec![outer];
    let mut rho = rho0;
    for _ in 0..3 {
        let shell = integrate_unvalidated(&mut folded, 0.5 * rho, rho, &sub)?;
        levels.push(*levels.last().unwrap() + shell);
        rho *= 0.5;
    }
    // Eliminate ρ, ρ³, ρ⁵ in turn (halving ρ scales them by 2, 8, 32).
    for p in [1, 3, 5] {
        let f = 2f64.powi(p);
        let next: Vec<T> = levels.windows(2).map(|w| (w[1] * f - w[0]) * (1.0 / (f - 1.0))).collect();
        levels = next;
    }
    Ok(levels[0])
}

fn integrate_unvalidated<T: Value, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64, cfg: &OracleConfig) -> Result<T> {
    let c = OracleConfig { tol: cfg.tol.max(1e-13), ..*cfg };
    Ok(integrate(f, a, b, &c)?.value)
}

/// Principal value of `∫ f` over one period centred at the pole `θ0`.
pub fn pv_periodic<T: Value, F: FnMut(f64) -> T>(f: F, theta0: f64, cfg: &OracleConfig) -> Result<T> {
    pv_integral(f, theta0, std::f64::consts::PI, cfg)
}
