use approx::assert_relative_eq;
use proptest::prelude::*;
use unsteady_stokes::kernels::*;
use unsteady_stokes::{Tensor2, Vec2};

fn close(a: &Tensor2, b: [[f64; 2]; 2], tol: f64) {
    let scale = b.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    for i in 0..2 {
        for j in 0..2 {
            assert!((a.m[i][j] - b[i][j]).abs() <= tol * scale, "[{i}][{j}]: {} vs {}", a.m[i][j], b[i][j]);
        }
    }
}

// Reference values from 40-digit evaluations of the defining formulas.
#[test]
fn phi_functions_match_high_precision() {
    let cases = [
        (1e-10, 0.99999999995, 0.49999999996666666667),
        (1e-3, 0.99950016662500833194, 0.49966679163334027659),
        (0.3, 0.86393926439427377978, 0.4104034790418530457),
        (0.7, 0.71916385172655783614, 0.31796935419306903062),
        (5.0, 0.19865241060018290658, 0.038382892720219487897),
        (40.0, 0.024999999999999999894, 0.00062499999999999989114),
    ];
    for (lam, p1, p2) in cases {
        let f = lambda_functions(lam).unwrap();
        assert_relative_eq!(f.phi1, p1, max_relative = 1e-14);
        assert_relative_eq!(f.phi2, p2, max_relative = 1e-14);
    }
}

#[test]
fn stokeslet_matches_high_precision() {
    close(
        &stokeslet(Vec2::new(0.3, -0.1), 0.01).unwrap(),
        [[1.2340468448811079271, -0.68058075957298870106], [-0.68058075957298870106, -0.58083518064686194242]],
        1e-14,
    );
    close(
        &stokeslet(Vec2::new(0.05, 0.02), 0.2).unwrap(),
        [[0.19848429698411420387, 0.00024807943904672943548], [0.00024807943904672943548, 0.19796333016211607206]],
        1e-14,
    );
    close(
        &stokeslet(Vec2::new(1.2, 0.7), 0.05).unwrap(),
        [[0.040614358430078764391, 0.071732622656747568823], [0.071732622656747568823, -0.040511821955528605112]],
        1e-14,
    );
}

#[test]
fn dlp_kernel_matches_high_precision() {
    close(
        &dlp_kernel(Vec2::new(0.3, -0.1), Vec2::new(0.0, 1.0), 0.01).unwrap(),
        [[-9.1838865089948202131, -10.126604107578602367], [-0.32842914406491259683, 5.9178281878235902898]],
        1e-14,
    );
    close(
        &dlp_kernel(Vec2::new(0.05, 0.02), Vec2::new(0.6, 0.8), 0.2).unwrap(),
        [[0.022827276463983550719, -0.013868805492830377566], [0.013882528407405741749, 0.022764200657832931013]],
        1e-13,
    );
}

#[test]
fn invalid_arguments() {
    assert!(stokeslet(Vec2::new(1.0, 0.0), 0.0).is_err());
    assert!(dlp_kernel(Vec2::new(1.0, 0.0), Vec2::new(1.0, 0.0), -1.0).is_err());
    assert!(lambda_functions(-1e-3).is_err());
    assert!(matches!(pressurelet_kernel(Vec2::ZERO, Vec2::new(1.0, 0.0)), Err(unsteady_stokes::Error::SingularPoint)));
}

#[test]
fn large_lambda_is_finite() {
    let f = lambda_functions(f64::INFINITY).unwrap();
    assert_eq!((f.phi1, f.phi2, f.exp_neg), (0.0, 0.0, 0.0));
    let g = stokeslet(Vec2::new(10.0, 0.0), 1e-12).unwrap();
    assert!(g.is_finite());
}

// The time integral of the double-layer kernel plus the pressurelet is the
// steady Stokes double-layer kernel (n·r) r⊗r / (π|r|⁴).
#[test]
fn dlp_integrates_to_steady_kernel() {
    let r = Vec2::new(0.4, -0.3);
    let n = Vec2::new(0.8, 0.6);
    // ∫₀^∞ f(u) du with u = e^z.
    let mut acc = Tensor2::ZERO;
    let (za, zb, k) = (-40.0f64, 40.0f64, 40_000);
    let h = (zb - za) / k as f64;
    for i in 0..=k {
        let z = za + i as f64 * h;
        let u = z.exp();
        let w = if i == 0 || i == k { 0.5 * h } else { h } * u;
        acc.add_scaled(&dlp_kernel(r, n, u).unwrap(), w);
    }
    acc.add_scaled(&pressurelet_kernel(r, n).unwrap(), 1.0);
    let steady = Tensor2::outer(r, r) * (n.dot(r) / (std::f64::consts::PI * r.norm_sq().powi(2)));
    let mut d = acc;
    d.add_scaled(&steady, -1.0);
    assert!(d.norm() < 1e-12 * steady.norm(), "{:?} vs {:?}", acc, steady);
}

fn divergence(k: impl Fn(Vec2) -> Tensor2, r: Vec2, h: f64) -> [f64; 2] {
    let dx = Vec2::new(h, 0.0);
    let dy = Vec2::new(0.0, h);
    let (px, mx, py, my) = (k(r + dx), k(r - dx), k(r + dy), k(r - dy));
    std::array::from_fn(|j| (px.m[0][j] - mx.m[0][j] + py.m[1][j] - my.m[1][j]) / (2.0 * h))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn stokeslet_symmetric_and_even(x in -2.0f64..2.0, y in -2.0f64..2.0, lu in -8.0f64..1.0) {
        let u = 10f64.powf(lu);
        let r = Vec2::new(x, y);
        let g = stokeslet(r, u).unwrap();
        let scale = g.norm();
        prop_assert!((g.m[0][1] - g.m[1][0]).abs() <= 1e-15 * scale);
        let gm = stokeslet(-r, u).unwrap();
        for i in 0..2 { for j in 0..2 { prop_assert!((g.m[i][j] - gm.m[i][j]).abs() <= 1e-15 * scale); } }
    }

    #[test]
    fn kernels_divergence_free(x in 0.05f64..1.0, y in -1.0f64..1.0, u in 0.02f64..1.0, nx in -1.0f64..1.0, ny in -1.0f64..1.0) {
        let r = Vec2::new(x, y);
        let n = Vec2::new(nx, ny);
        let h = 1e-5;
        let scale_g = stokeslet(r, u).unwrap().norm() / r.norm().min(u.sqrt());
        for d in divergence(|p| stokeslet(p, u).unwrap(), r, h) {
            prop_assert!(d.abs() <= 1e-7 * scale_g, "div G = {d}");
        }
        let scale_d = dlp_kernel(r, n, u).unwrap().norm() / r.norm().min(u.sqrt()) + 1e-300;
        for d in divergence(|p| dlp_kernel(p, n, u).unwrap(), r, h) {
            prop_assert!(d.abs() <= 1e-7 * scale_d.max(1e-12), "div D = {d}");
        }
    }

    #[test]
    fn series_and_direct_agree_near_switch(lam in 0.05f64..1.0) {
        let s = lambda_functions_series(lam);
        let d = lambda_functions_direct(lam);
        prop_assert!(((s.phi1 - d.phi1) / s.phi1).abs() < 1e-13);
        prop_assert!(((s.phi2 - d.phi2) / s.phi2).abs() < 1e-13);
    }

    #[test]
    fn stokeslet_continuous_at_origin(lu in -6.0f64..1.0, a in 0.0f64..6.3) {
        let u = 10f64.powf(lu);
        let g0 = stokeslet(Vec2::ZERO, u).unwrap();
        let r = Vec2::new(a.cos(), a.sin()) * (1e-6 * u.sqrt());
        let g = stokeslet(r, u).unwrap();
        let mut d = g;
        d.add_scaled(&g0, -1.0);
        prop_assert!(d.norm() <= 1e-11 * g0.norm());
    }

    #[test]
    fn dlp_linear_in_normal(x in -1.0f64..1.0, y in -1.0f64..1.0, u in 1e-4f64..1.0, s in -3.0f64..3.0) {
        let r = Vec2::new(x, y);
        let (n1, n2) = (Vec2::new(0.3, -0.2), Vec2::new(-1.1, 0.4));
        let lhs = dlp_kernel(r, n1 * s + n2, u).unwrap();
        let mut rhs = dlp_kernel(r, n2, u).unwrap();
        rhs.add_scaled(&dlp_kernel(r, n1, u).unwrap(), s);
        let mut d = lhs;
        d.add_scaled(&rhs, -1.0);
        prop_assert!(d.norm() <= 1e-13 * (lhs.norm() + rhs.norm() + 1e-300));
    }
}
