use std::f64::consts::PI;

use unsteady_stokes::quadrature::*;

#[test]
fn gauss_legendre_degree() {
    for n in [1, 2, 5, 10, 20, 40] {
        let rule = gauss_legendre(n, -0.5, 2.0).unwrap();
        let deg = 2 * n as i32 - 1;
        let v = apply_rule(&rule, |x| x.powi(deg)).unwrap();
        let exact = (2f64.powi(deg + 1) - (-0.5f64).powi(deg + 1)) / (deg + 1) as f64;
        assert!((v - exact).abs() < 1e-13 * exact.abs().max(1.0), "n={n}: {v} vs {exact}");
    }
    assert!(gauss_legendre(0, 0.0, 1.0).is_err());
}

// ∫₀^{2π} ln(4 sin²(θ/2)) / (a + cos θ) dθ = 4π ln(1 + a − √(a²−1)) / √(a²−1).
fn log_singular_error(order: AlpertOrder, m: usize) -> f64 {
    let a: f64 = 1.5;
    let s = (a * a - 1.0).sqrt();
    let exact = 4.0 * PI * (1.0 + a - s).ln() / s;
    let rule = alpert_log_rule(order, m).unwrap();
    (apply_rule(&rule, |x| (4.0 * (0.5 * x).sin().powi(2)).ln() / (a + x.cos())).unwrap() - exact).abs()
}

#[test]
fn alpert_orders() {
    let observed = |order, m1: usize, m2: usize| {
        (log_singular_error(order, m1) / log_singular_error(order, m2)).ln() / (m2 as f64 / m1 as f64).ln()
    };
    assert!(observed(AlpertOrder::Four, 40, 80) > 3.5);
    assert!(observed(AlpertOrder::Eight, 20, 30) > 7.5);
    assert!(log_singular_error(AlpertOrder::Sixteen, 64) < 1e-13);
}

#[test]
fn alpert_principal_value_of_cotangent() {
    // PV ∫ cot(θ/2) sin θ dθ over a period = 2π.
    let rule = alpert_log_rule(AlpertOrder::Sixteen, 64).unwrap();
    let v = apply_rule(&rule, |x| x.sin() / (0.5 * x).tan()).unwrap();
    assert!((v - 2.0 * PI).abs() < 1e-12);
}

#[test]
fn real_line_rule_gaussians() {
    let rule = real_line_rule(96, 8.0, 48).unwrap();
    let v = apply_rule(&rule, |z| (-z * z).exp()).unwrap();
    assert!((v - PI.sqrt()).abs() < 1e-14);
    // Algebraic tails are mapped, not truncated; the inner panel is kept
    // short relative to the poles at ±i.
    let rule = real_line_rule(64, 2.0, 32).unwrap();
    let v = apply_rule(&rule, |z| 1.0 / (1.0 + z * z)).unwrap();
    assert!((v - PI).abs() < 1e-13, "{v}");
}

#[test]
fn apply_rule_rejects_non_finite() {
    let rule = gauss_legendre(4, 0.0, 1.0).unwrap();
    assert!(apply_rule(&rule, |x| 1.0 / (x - rule.nodes[2])).is_err());
}
