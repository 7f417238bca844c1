//! Supplying your own moving boundary: a rotating, breathing three-lobed
//! curve, and the double-layer potential of a constant density on it.

use unsteady_stokes::geometry::{snapshot, MovingBoundary};
use unsteady_stokes::layerpot::{potential_eval, DensityHistory, LayerKind, SplitConfig, Target};
use unsteady_stokes::Vec2;

struct Trefoil;

impl Trefoil {
    fn radius(theta: f64, t: f64) -> (f64, f64, f64) {
        // r, r_θ, r_θθ
        let a = 0.15 * (1.0 + 0.5 * t);
        (1.0 + a * (3.0 * theta).cos(), -3.0 * a * (3.0 * theta).sin(), -9.0 * a * (3.0 * theta).cos())
    }
}

impl MovingBoundary for Trefoil {
    fn position(&self, theta: f64, t: f64) -> Vec2 {
        let (r, _, _) = Self::radius(theta, t);
        let phi = theta + 0.3 * t;
        Vec2::new(r * phi.cos(), r * phi.sin())
    }

    fn d_theta(&self, theta: f64, t: f64) -> Vec2 {
        let (r, rt, _) = Self::radius(theta, t);
        let phi = theta + 0.3 * t;
        Vec2::new(rt * phi.cos() - r * phi.sin(), rt * phi.sin() + r * phi.cos())
    }

    fn d_theta2(&self, theta: f64, t: f64) -> Vec2 {
        let (r, rt, rtt) = Self::radius(theta, t);
        let phi = theta + 0.3 * t;
        Vec2::new(
            (rtt - r) * phi.cos() - 2.0 * rt * phi.sin(),
            (rtt - r) * phi.sin() + 2.0 * rt * phi.cos(),
        )
    }

    fn velocity(&self, theta: f64, t: f64) -> Vec2 {
        let (r, _, _) = Self::radius(theta, t);
        let phi = theta + 0.3 * t;
        let dr = 0.075 * (3.0 * theta).cos();
        Vec2::new(dr * phi.cos() - 0.3 * r * phi.sin(), dr * phi.sin() + 0.3 * r * phi.cos())
    }
}

fn main() -> unsteady_stokes::Result<()> {
    let (m, dt, steps) = (160, 0.02, 5);
    let t = steps as f64 * dt;
    let snap = snapshot(&Trefoil, m, t)?;
    println!("perimeter {:.6}, max curvature {:.3}", snap.perimeter(), snap.curvature.iter().cloned().fold(0.0, f64::max));

    let mut hist = DensityHistory::new(dt, m, 4)?;
    for _ in 0..=steps {
        hist.push(vec![Vec2::new(1.0, 0.0); m])?;
    }
    let targets: Vec<Target> = (0..m).step_by(m / 4).map(Target::Node).collect();
    for eps in [1e-6, 1e-9, 1e-12] {
        let v = potential_eval(&Trefoil, &hist, &targets, t, LayerKind::Double, &SplitConfig::new(eps, dt)?)?;
        let shown: Vec<String> = v.iter().map(|p| format!("({:+.9}, {:+.9})", p.x, p.y)).collect();
        println!("ε = {eps:e}: {}", shown.join(" "));
    }
    Ok(())
}
