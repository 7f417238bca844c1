//! Single- and double-layer potentials of a time-dependent density, on the
//! boundary (collocation nodes) and at interior points.

use std::f64::consts::PI;

use unsteady_stokes::geometry::LinearEllipse;
use unsteady_stokes::layerpot::{potential_eval, DensityHistory, LayerKind, SplitConfig, Target};
use unsteady_stokes::Vec2;

fn main() -> unsteady_stokes::Result<()> {
    let b = LinearEllipse::circle_to_ellipse();
    let (m, dt, steps) = (128, 0.02, 10);
    let t = steps as f64 * dt;

    let mut hist = DensityHistory::new(dt, m, 4)?;
    for j in 0..=steps {
        let tau = j as f64 * dt;
        hist.push(
            (0..m)
                .map(|i| {
                    let th = 2.0 * PI * i as f64 / m as f64;
                    Vec2::new(th.cos() * (1.0 + tau), (2.0 * th).sin() - tau * tau)
                })
                .collect(),
        )?;
    }

    let cfg = SplitConfig::new(1e-10, dt)?;
    let targets = [
        Target::Node(0),
        Target::Node(32),
        Target::Node(64),
        Target::Point(Vec2::new(0.0, 0.0)),
        Target::Point(Vec2::new(0.3, 0.1)),
    ];
    for kind in [LayerKind::Single, LayerKind::Double] {
        let clock = std::time::Instant::now();
        let v = potential_eval(&b, &hist, &targets, t, kind, &cfg)?;
        println!("{kind:?} layer at t = {t} ({:.2} s)", clock.elapsed().as_secs_f64());
        for (tg, val) in targets.iter().zip(v) {
            println!("  {tg:?}: ({:+.12e}, {:+.12e})", val.x, val.y);
        }
    }
    Ok(())
}
