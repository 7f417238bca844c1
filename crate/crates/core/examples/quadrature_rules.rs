//! Gauss–Legendre panels, Alpert's log-singular periodic rules and the
//! mapped whole-line rule.

use std::f64::consts::PI;

use unsteady_stokes::quadrature::{alpert_log_rule, apply_rule, gauss_legendre, real_line_rule, AlpertOrder};

fn main() -> unsteady_stokes::Result<()> {
    let gl = gauss_legendre(12, 0.0, 1.0)?;
    let v = apply_rule(&gl, |x| (3.0 * x).exp())?;
    println!("12-point Gauss on ∫₀¹ e^{{3x}}: error {:.2e}", (v - ((3f64).exp() - 1.0) / 3.0).abs());

    // ∫₀^{2π} ln(4 sin²(θ/2)) / (a + cos θ) dθ = 4π ln(1 + a − √(a²−1)) / √(a²−1).
    let a: f64 = 1.5;
    let s = (a * a - 1.0).sqrt();
    let exact = 4.0 * PI * (1.0 + a - s).ln() / s;
    let f = |x: f64| (4.0 * (0.5 * x).sin().powi(2)).ln() / (a + x.cos());
    println!("\nlog-singular periodic integral, error by grid size:");
    println!("   M    order 4     order 8     order 16");
    for m in [32, 48, 64, 96, 128] {
        let mut line = format!("{m:>4}");
        for order in [AlpertOrder::Four, AlpertOrder::Eight, AlpertOrder::Sixteen] {
            match alpert_log_rule(order, m) {
                Ok(rule) => line += &format!("  {:.3e}", (apply_rule(&rule, f)? - exact).abs()),
                Err(_) => line += "          -",
            }
        }
        println!("{line}");
    }

    let line = real_line_rule(96, 8.0, 48)?;
    let v = apply_rule(&line, |z| (1.0 - (-z * z).exp()) / (z * z))?;
    println!("\n∫ (1 − e^{{−z²}})/z² dz = {v:.15} (2√π = {:.15})", 2.0 * PI.sqrt());
    Ok(())
}
