//! Pointwise unsteady Stokes kernels.
//!
//! All kernels take the displacement `r = x − y` (target minus source) and
//! the time lag `τd = t − τ > 0`, with `λ = |r|²/(4τd)`. Tensor entries are
//! indexed `[target component][density component]`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{Tensor2, Vec2};

/// Below this λ both helpers switch to their Taylor series.
pub const LAMBDA_SERIES_SWITCH: f64 = 0.5;

// Taylor coefficients in λ, highest degree last. Truncation at degree 16 keeps
// the remainder below 1e-18 on [0, 0.5].
const PHI1_SERIES: [f64; 17] = series_coeffs(1);
const PHI2_SERIES: [f64; 17] = series_coeffs(2);

/// φ₁ = Σ (−λ)^m/(m+1)!,  φ₂ = Σ (−1)^m (m+1) λ^m/(m+2)!.
const fn series_coeffs(which: u32) -> [f64; 17] {
    let mut c = [0.0; 17];
    let mut m = 0;
    while m < 17 {
        // (m + which)! computed in floating point; exact up to 18!.
        let mut fact = 1.0;
        let mut k = 2;
        while k <= m + which as usize {
            fact *= k as f64;
            k += 1;
        }
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        c[m] = if which == 1 { sign / fact } else { sign * (m + 1) as f64 / fact };
        m += 1;
    }
    c
}

#[inline]
fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

/// The pair φ₁(λ) = (1−e^{−λ})/λ and φ₂(λ) = (1−e^{−λ}−λe^{−λ})/λ².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaFunctions {
    pub phi1: f64,
    pub phi2: f64,
    /// e^{−λ}, returned because every kernel needs it anyway.
    pub exp_neg: f64,
}

/// Evaluate φ₁, φ₂ without cancellation. Panics in debug builds on λ < 0;
/// use [`lambda_functions`] for the checked version.
#[inline]
pub fn lambda_functions_unchecked(lambda: f64) -> LambdaFunctions {
    debug_assert!(lambda >= 0.0);
    let exp_neg = (-lambda).exp();
    if lambda < LAMBDA_SERIES_SWITCH {
        LambdaFunctions {
            phi1: horner(&PHI1_SERIES, lambda),
            phi2: horner(&PHI2_SERIES, lambda),
            exp_neg,
        }
    } else if lambda.is_infinite() {
        LambdaFunctions { phi1: 0.0, phi2: 0.0, exp_neg }
    } else {
        // 1 − e^{−λ} ≥ 0.39 here, so the subtraction is accurate.
        let one_minus = 1.0 - exp_neg;
        LambdaFunctions {
            phi1: one_minus / lambda,
            phi2: (one_minus - lambda * exp_neg) / (lambda * lambda),
            exp_neg,
        }
    }
}

pub fn lambda_functions(lambda: f64) -> Result<LambdaFunctions> {
    if !(lambda >= 0.0) {
        return Err(Error::Domain(format!("lambda must be non-negative, got {lambda}")));
    }
    Ok(lambda_functions_unchecked(lambda))
}

/// Direct (cancellation-prone) branch, exposed for the branch-consistency tests.
pub fn lambda_functions_direct(lambda: f64) -> LambdaFunctions {
    let e = (-lambda).exp();
    LambdaFunctions {
        phi1: (1.0 - e) / lambda,
        phi2: (1.0 - e - lambda * e) / (lambda * lambda),
        exp_neg: e,
    }
}

/// Series branch, exposed for the branch-consistency tests.
pub fn lambda_functions_series(lambda: f64) -> LambdaFunctions {
    LambdaFunctions {
        phi1: horner(&PHI1_SERIES, lambda),
        phi2: horner(&PHI2_SERIES, lambda),
        exp_neg: (-lambda).exp(),
    }
}

fn check_lag(tau_d: f64) -> Result<()> {
    if tau_d > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("time lag must be positive, got {tau_d}")))
    }
}

/// Unsteady Stokeslet
/// `G = e^{−λ}/(4πτd)(I − r̂r̂) − (1−e^{−λ})/(2π|r|²)(I − 2r̂r̂)`,
/// rewritten as `[(2e^{−λ} − φ₁) I + φ₂ rrᵀ/(2τd)] / (8πτd)`.
#[inline]
pub fn stokeslet_unchecked(r: Vec2, tau_d: f64) -> Tensor2 {
    let r2 = r.norm_sq();
    if r2 == 0.0 {
        return Tensor2::scaled_identity(1.0 / (8.0 * PI * tau_d));
    }
    let lf = lambda_functions_unchecked(r2 / (4.0 * tau_d));
    let pre = 1.0 / (8.0 * PI * tau_d);
    let diag = pre * (2.0 * lf.exp_neg - lf.phi1);
    let c = pre * lf.phi2 / (2.0 * tau_d);
    Tensor2::new(diag + c * r.x * r.x, c * r.x * r.y, c * r.y * r.x, diag + c * r.y * r.y)
}

pub fn stokeslet(r: Vec2, tau_d: f64) -> Result<Tensor2> {
    check_lag(tau_d)?;
    Ok(stokeslet_unchecked(r, tau_d))
}

/// Unsteady double-layer kernel
/// `D = [n⊗r + (n·r)(I − 2r̂r̂)] e^{−λ}/(8πτd²)
///    − [n⊗r + r⊗n + (n·r)(I − 4r̂r̂)] φ₂/(8πτd²)`.
///
/// Linear in `n`; callers may pass an unnormalized normal to fold in the
/// arclength factor.
#[inline]
pub fn dlp_kernel_unchecked(r: Vec2, n: Vec2, tau_d: f64) -> Tensor2 {
    let r2 = r.norm_sq();
    let lf = lambda_functions_unchecked(r2 / (4.0 * tau_d));
    let pre = 1.0 / (8.0 * PI * tau_d * tau_d);
    let a = pre * lf.exp_neg;
    let b = pre * lf.phi2;
    let nr = n.dot(r);
    // (n·r) r̂r̂ = (n·r)/|r|² · rrᵀ, which vanishes with r.
    let q = if r2 > 0.0 { nr / r2 } else { 0.0 };
    let nxr = Tensor2::outer(n, r);
    let rxn = Tensor2::outer(r, n);
    let rr = Tensor2::outer(r, r);
    let mut d = Tensor2::ZERO;
    d.add_scaled(&nxr, a - b);
    d.add_scaled(&rxn, -b);
    d.add_scaled(&Tensor2::IDENTITY, nr * (a - b));
    d.add_scaled(&rr, q * (4.0 * b - 2.0 * a));
    d
}

pub fn dlp_kernel(r: Vec2, n: Vec2, tau_d: f64) -> Result<Tensor2> {
    check_lag(tau_d)?;
    Ok(dlp_kernel_unchecked(r, n, tau_d))
}

/// Instantaneous pressurelet contribution `(r⊗n)/(2π|r|²)`.
#[inline]
pub fn pressurelet_unchecked(r: Vec2, n: Vec2) -> Tensor2 {
    let r2 = r.norm_sq();
    Tensor2::outer(r, n) * (1.0 / (2.0 * PI * r2))
}

pub fn pressurelet_kernel(r: Vec2, n: Vec2) -> Result<Tensor2> {
    if r.norm_sq() == 0.0 {
        return Err(Error::SingularPoint);
    }
    Ok(pressurelet_unchecked(r, n))
}
