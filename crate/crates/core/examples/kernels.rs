//! The unsteady Stokeslet, its double-layer kernel and the pressurelet,
//! including the cancellation-free evaluation of φ₁, φ₂ for small λ.

use unsteady_stokes::kernels::{
    dlp_kernel, lambda_functions, lambda_functions_direct, pressurelet_kernel, stokeslet, LAMBDA_SERIES_SWITCH,
};
use unsteady_stokes::Vec2;

fn main() -> unsteady_stokes::Result<()> {
    let r = Vec2::new(0.3, -0.1);
    let n = Vec2::new(0.0, 1.0);
    for u in [1e-3, 1e-2, 1e-1, 1.0] {
        let g = stokeslet(r, u)?;
        let d = dlp_kernel(r, n, u)?;
        println!("u = {u:<6} G = {:?}\n           D = {:?}", g.m, d.m);
    }
    println!("pressurelet: {:?}", pressurelet_kernel(r, n)?.m);

    println!("\nλ          φ₂ (stable)            φ₂ (naive formula)    switch at λ = {LAMBDA_SERIES_SWITCH}");
    for k in 1..=8 {
        let lam = 10f64.powi(-k);
        let stable = lambda_functions(lam)?;
        let naive = lambda_functions_direct(lam);
        println!("{lam:<10e} {:.17e}  {:.17e}", stable.phi2, naive.phi2);
    }
    Ok(())
}
