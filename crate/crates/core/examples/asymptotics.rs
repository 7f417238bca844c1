//! Accuracy of the closed-form slice over the last ε of the time integral:
//! the hybrid evaluator against one whose slice is only machine-ε wide.

use unsteady_stokes::geometry::{snapshot, BuiltinBoundary};
use unsteady_stokes::layerpot::{potential_eval, DensityHistory, LayerKind, SplitConfig, Target};
use unsteady_stokes::linalg::relative_l2;
use unsteady_stokes::Vec2;

fn main() -> unsteady_stokes::Result<()> {
    let (m, t) = (200, 0.075);
    let b = BuiltinBoundary::CircleToEllipse.boundary();
    let snap = snapshot(b.as_ref(), m, t)?;
    let phi: Vec<Vec2> = snap.points.iter().map(|y| Vec2::new((20.0 * y.y).cos(), 3.0 * y.x.powi(3))).collect();
    // Held constant in time on [0, T]; δ = T leaves no history part.
    let hist = DensityHistory::constant(t, phi)?;
    let targets: Vec<Target> = (0..m).map(Target::Node).collect();

    for kind in [LayerKind::Single, LayerKind::Double] {
        let reference = potential_eval(b.as_ref(), &hist, &targets, t, kind, &SplitConfig::new(f64::EPSILON, t)?)?;
        println!("{kind:?} layer");
        let mut prev: Option<f64> = None;
        for eps in [1e-2, 1e-3, 1e-4, 1e-5, 1e-6] {
            let hybrid = potential_eval(b.as_ref(), &hist, &targets, t, kind, &SplitConfig::new(eps, t)?)?;
            let e = relative_l2(&hybrid, &reference);
            let slope = prev.map(|p| format!("{:.2}", (p / e).log10())).unwrap_or_default();
            println!("  ε = {eps:e}  error {e:.3e}  local slope {slope}");
            prev = Some(e);
        }
    }
    Ok(())
}
