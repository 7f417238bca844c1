//! The four time integrals of the near part after the change of variables
//! z = ln u, with the ⌈10 log₁₀(1/ε)⌉-node Gauss rule.

use unsteady_stokes::layerpot::{near_time_integrals, SplitConfig};

fn main() -> unsteady_stokes::Result<()> {
    let delta = 1e-2;
    for eps in [1e-4, 1e-8, 1e-12] {
        let n = SplitConfig::min_nodes(eps);
        println!("ε = {eps:e}, {n} nodes");
        for dist in [0.0, 0.01, 0.1, 0.5] {
            let i = near_time_integrals(dist, eps, delta, n)?;
            // Compare against twice as many nodes.
            let j = near_time_integrals(dist, eps, delta, 2 * n)?;
            let diff = [(i.i1 - j.i1) / j.i1, (i.i2 - j.i2) / j.i2, (i.i3 - j.i3) / j.i3, (i.i4 - j.i4) / j.i4]
                .iter()
                .map(|x| x.abs())
                .fold(0.0, f64::max);
            println!(
                "  |r| = {dist:<5} I1 {:.6e}  I2 {:.6e}  I3 {:.6e}  I4 {:.6e}  (rel. change at 2n: {diff:.1e})",
                i.i1, i.i2, i.i3, i.i4
            );
        }
    }
    Ok(())
}
