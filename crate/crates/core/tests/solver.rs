use std::f64::consts::PI;
use std::sync::Arc;

use unsteady_stokes::geometry::{BuiltinBoundary, LinearEllipse};
use unsteady_stokes::linalg::relative_l2;
use unsteady_stokes::solver::*;
use unsteady_stokes::Vec2;

#[test]
fn exact_solution_solves_unsteady_stokes() {
    let h = 1e-4;
    let (ex, ey) = (Vec2::new(h, 0.0), Vec2::new(0.0, h));
    let u = |x: Vec2, t: f64| exact_solution(x, t).unwrap();
    let p = |x: Vec2, t: f64| exact_pressure(x, t).unwrap();
    for (x, t) in [(Vec2::new(0.2, -0.1), 0.3), (Vec2::new(-0.5, 0.4), 0.7), (Vec2::new(1.1, 0.9), 1.0)] {
        let div = (u(x + ex, t).x - u(x - ex, t).x + u(x + ey, t).y - u(x - ey, t).y) / (2.0 * h);
        let scale = u(x, t).norm().max(1.0);
        assert!(div.abs() < 1e-7 * scale, "div {div:e}");

        let ut = (u(x, t + h) - u(x, t - h)) * (0.5 / h);
        let lap = (u(x + ex, t) + u(x - ex, t) + u(x + ey, t) + u(x - ey, t) - u(x, t) * 4.0) * (1.0 / (h * h));
        let grad_p = Vec2::new(p(x + ex, t) - p(x - ex, t), p(x + ey, t) - p(x - ey, t)) * (0.5 / h);
        let res = ut - lap + grad_p;
        assert!(res.norm() < 1e-4 * (ut.norm() + grad_p.norm()).max(1.0), "residual {res:?}");
    }
    assert!(exact_solution(Vec2::ZERO, 0.0).is_err());
}

#[test]
fn vortex_centres_on_circle() {
    for y in vortex_centers() {
        assert!((y.norm() - VORTEX_RADIUS).abs() < 1e-15);
    }
}

#[test]
fn gmres_solves_nonsymmetric_system() {
    let n = 30;
    let a = |i: usize, j: usize| if i == j { 4.0 } else { 1.0 / (1.0 + (i as f64 - 2.0 * j as f64).abs()) };
    let apply = |x: &[f64]| (0..n).map(|i| (0..n).map(|j| a(i, j) * x[j]).sum()).collect::<Vec<f64>>();
    let xs: Vec<f64> = (0..n).map(|i| (i as f64 * 0.7).sin()).collect();
    let b = apply(&xs);
    let out = gmres(apply, &b, &vec![0.0; n], 1e-13, 60);
    assert!(out.converged);
    assert!(out.iterations <= n);
    assert!(out.residuals.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
    let err = out.x.iter().zip(&xs).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
    assert!(err < 1e-11, "{err:e}");

    let zero = gmres(apply, &vec![0.0; n], &vec![0.0; n], 1e-12, 10);
    assert_eq!(zero.iterations, 0);
    assert!(zero.x.iter().all(|&v| v == 0.0));
}

#[test]
fn zero_data_gives_zero_density() {
    let b: Arc<LinearEllipse> = Arc::new(BuiltinBoundary::CircleToEllipse.curve());
    let data: BoundaryData = Arc::new(|_, _| Ok(Vec2::ZERO));
    let problem = DirichletProblem::new(b, data, 0.2);
    let cfg = SolverConfig { points: 64, ..SolverConfig::default() };
    let state = march(&problem, 4, &cfg).unwrap();
    assert_eq!(state.step, 4);
    assert!(state.density().iter().all(|v| v.norm() == 0.0));
}

#[test]
fn config_validation() {
    let cfg = SolverConfig { points: 48, ..SolverConfig::default() };
    assert!(cfg.validate(0.05).is_ok());
    assert!(SolverConfig { points: 47, ..cfg }.validate(0.05).is_err());
    assert!(SolverConfig { eps: 0.1, ..cfg }.validate(0.05).is_err());
    assert!(cfg.validate(-1.0).is_err());
}

// Short march on the translating-and-deforming ellipse against the
// manufactured solution; halving Δt must cut the error.
#[test]
fn manufactured_solution_converges() {
    let which = BuiltinBoundary::CircleToEllipse;
    let b = which.boundary();
    let t = 0.3;
    let cfg = SolverConfig { points: 64, ..SolverConfig::default() };
    let e = which.curve();
    let pts: Vec<Vec2> = (0..12)
        .map(|j| {
            let al = 2.0 * PI * j as f64 / 12.0;
            Vec2::new(e.center_x.at(t) + 0.4 * e.semi_x.at(t) * al.cos(), e.center_y.at(t) + 0.4 * e.semi_y.at(t) * al.sin())
        })
        .collect();
    let exact: Vec<Vec2> = pts.iter().map(|&x| exact_solution(x, t).unwrap()).collect();
    let problem = DirichletProblem::manufactured(b.clone(), t);
    let mut errs = Vec::new();
    for n in [6, 12] {
        let state = march(&problem, n, &cfg).unwrap();
        assert!(state.reports.iter().all(|r| r.residual <= 1e-12));
        let u = eval_interior(b.as_ref(), &state, &pts, t).unwrap();
        errs.push(relative_l2(&u, &exact));
    }
    assert!(errs[1] < 1e-2, "{errs:?}");
    assert!(errs[0] / errs[1] > 4.0, "{errs:?}");
}
