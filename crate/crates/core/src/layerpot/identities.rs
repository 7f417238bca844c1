//! The Gaussian-type line integrals and space-time kernel moments behind the
//! leading-order asymptotics, evaluated with the crate's own quadrature.

use std::f64::consts::PI;

use crate::error::Result;
use crate::kernels::lambda_functions_unchecked;
use crate::quadrature::{apply_rule, gauss_legendre, real_line_rule, QuadRule};

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub value: f64,
    pub target: f64,
}

impl IdentityCheck {
    pub fn abs_error(&self) -> f64 {
        (self.value - self.target).abs()
    }
}

fn line() -> Result<QuadRule> {
    real_line_rule(96, 8.0, 48)
}

/// `∫_{−∞}^{∞}` of `e^{−z²}`, `z²e^{−z²}`, `(1−e^{−z²})/z²` and
/// `(1−e^{−z²}−z²e^{−z²})/z⁴`.
pub fn line_identities() -> Result<Vec<IdentityCheck>> {
    let rule = line()?;
    let sp = PI.sqrt();
    let lf = |z: f64| lambda_functions_unchecked(z * z);
    Ok(vec![
        IdentityCheck { name: "int exp(-z^2)", value: apply_rule(&rule, |z| (-z * z).exp())?, target: sp },
        IdentityCheck { name: "int z^2 exp(-z^2)", value: apply_rule(&rule, |z| z * z * (-z * z).exp())?, target: 0.5 * sp },
        IdentityCheck { name: "int (1-exp(-z^2))/z^2", value: apply_rule(&rule, |z| lf(z).phi1)?, target: 2.0 * sp },
        IdentityCheck {
            name: "int (1-exp(-z^2)-z^2 exp(-z^2))/z^4",
            value: apply_rule(&rule, |z| lf(z).phi2)?,
            target: 2.0 * sp / 3.0,
        },
    ])
}

/// Space-time moments over lags `u ∈ [0, ε]` and arclength `s ∈ ℝ`, with
/// `λ = s²/(4u)`:
/// `∬ s² e^{−λ}/u² = 8√(πε)`, `∬ e^{−λ}/u = 4√(πε)`,
/// `∬ s² φ₂(λ)/u² = 16√(πε)`, `∬ φ₂(λ)/u = (8/3)√(πε)`.
///
/// The lag integral uses `u = εv²` (absorbing the `u^{−1/2}` endpoint
/// behaviour); the arclength integral uses the real-line rule scaled by √u.
pub fn moment_identities(eps: f64) -> Result<Vec<IdentityCheck>> {
    let line = line()?;
    let outer = gauss_legendre(32, 0.0, 1.0)?;
    let mut m = [0.0f64; 4];
    for (v, wv) in outer.iter() {
        let u = eps * v * v;
        let du = 2.0 * eps * v * wv;
        let scale = (4.0 * u).sqrt();
        let mut inner = [0.0f64; 4];
        for (z, wz) in line.iter() {
            let s = scale * z;
            let lf = lambda_functions_unchecked(s * s / (4.0 * u));
            let ds = scale * wz;
            inner[0] += ds * s * s * lf.exp_neg / (u * u);
            inner[1] += ds * lf.exp_neg / u;
            inner[2] += ds * s * s * lf.phi2 / (u * u);
            inner[3] += ds * lf.phi2 / u;
        }
        for (a, b) in m.iter_mut().zip(inner) {
            *a += du * b;
        }
    }
    let c = (PI * eps).sqrt();
    Ok(vec![
        IdentityCheck { name: "moment s^2 e^-l/u^2", value: m[0], target: 8.0 * c },
        IdentityCheck { name: "moment e^-l/u", value: m[1], target: 4.0 * c },
        IdentityCheck { name: "moment s^2 phi2/u^2", value: m[2], target: 16.0 * c },
        IdentityCheck { name: "moment phi2/u", value: m[3], target: 8.0 / 3.0 * c },
    ])
}
