//! Time marching for the velocity boundary-value problem on a moving
//! ellipse, checked against the manufactured exact solution.
//!
//! `cargo run --release --example dirichlet_solve -- [boundary] [N] [M] [T]`

use std::f64::consts::PI;

use unsteady_stokes::geometry::BuiltinBoundary;
use unsteady_stokes::linalg::relative_l2;
use unsteady_stokes::solver::{eval_interior, exact_solution, march_with, DirichletProblem, SolverConfig};
use unsteady_stokes::Vec2;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().collect();
    let which = BuiltinBoundary::from_name(args.get(1).map(String::as_str).unwrap_or("circle-to-ellipse"))?;
    let n: usize = args.get(2).map(|s| s.parse()).transpose()?.unwrap_or(20);
    let m: usize = args.get(3).map(|s| s.parse()).transpose()?.unwrap_or(100);
    let t: f64 = args.get(4).map(|s| s.parse()).transpose()?.unwrap_or(1.0);

    let b = which.boundary();
    let problem = DirichletProblem::manufactured(b.clone(), t);
    let cfg = SolverConfig { points: m, ..SolverConfig::default() };
    let state = march_with(&problem, n, &cfg, |r| {
        if r.step % (n / 5).max(1) == 0 {
            println!("step {:>4}: {:>2} GMRES iterations, residual {:.1e}, {:.2} s", r.step, r.iterations, r.residual, r.seconds);
        }
    })?;

    let e = which.curve();
    let (cx, cy, a, bb) = (e.center_x.at(t), e.center_y.at(t), e.semi_x.at(t), e.semi_y.at(t));
    let pts: Vec<Vec2> = [0.15, 0.3, 0.45, 0.6]
        .iter()
        .flat_map(|&rho| {
            (0..25).map(move |j| {
                let al = 2.0 * PI * j as f64 / 25.0;
                Vec2::new(cx + rho * a * al.cos(), cy + rho * bb * al.sin())
            })
        })
        .collect();
    let u = eval_interior(b.as_ref(), &state, &pts, t)?;
    let exact = pts.iter().map(|&x| exact_solution(x, t)).collect::<Result<Vec<_>, _>>()?;
    println!("{}: N = {n}, M = {m}, relative l² error at t = {t}: {:.3e}", which.name(), relative_l2(&u, &exact));
    Ok(())
}
