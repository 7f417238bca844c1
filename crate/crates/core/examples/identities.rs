//! The Gaussian line integrals and kernel moments that the leading-order
//! asymptotics are built from, checked with the crate's own quadrature.

use unsteady_stokes::layerpot::{line_identities, moment_identities};

fn main() -> unsteady_stokes::Result<()> {
    let mut checks = line_identities()?;
    checks.extend(moment_identities(1e-4)?);
    println!("{:<42} {:>22} {:>22} {:>10}", "identity", "value", "target", "error");
    for c in &checks {
        println!("{:<42} {:>22.15e} {:>22.15e} {:>10.2e}", c.name, c.value, c.target, c.abs_error());
    }
    Ok(())
}
