//! Local frames of the built-in moving boundaries, and how fast the local
//! space-time expansion of a boundary loses accuracy.

use unsteady_stokes::geometry::{eval_frame, snapshot, taylor_defect, BuiltinBoundary};

fn main() -> unsteady_stokes::Result<()> {
    for b in BuiltinBoundary::ALL {
        let curve = b.boundary();
        let snap = snapshot(curve.as_ref(), 128, 0.5)?;
        println!(
            "{:<18} perimeter {:.6}  area {:.6}  max spacing {:.4}",
            b.name(),
            snap.perimeter(),
            snap.signed_area(),
            snap.max_spacing()
        );
    }

    let curve = BuiltinBoundary::EllipseTranslate.boundary();
    let f = eval_frame(curve.as_ref(), 0.0, 0.25)?;
    println!("\nellipse-translate at θ = 0, t = 0.25:");
    println!("  point {:?}\n  tangent {:?}\n  normal {:?}", f.point, f.tangent, f.normal);
    println!("  curvature {:.3}  normal velocity {:.3}  |y_θ| {:.3}", f.curvature, f.normal_velocity, f.speed);

    // The defect of x + t̂s − ½κs²n̂ − (v·n)τn̂ shrinks like s³ and τ².
    println!("\n  s        defect(s, 0)   τ        defect(0, τ)");
    for k in 0..5 {
        let s = 0.04 / 2f64.powi(k);
        let tau = 0.04 / 2f64.powi(k);
        let ds = taylor_defect(curve.as_ref(), 0.3, 0.25, s, 0.0)?;
        let dt = taylor_defect(curve.as_ref(), 0.3, 0.25, 0.0, tau)?;
        println!("  {s:.5}  {ds:.3e}     {tau:.5}  {dt:.3e}");
    }
    Ok(())
}
