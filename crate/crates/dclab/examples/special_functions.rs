//! Gamma, Kummer M and Tricomi U at the parameters the fundamental solutions use.

use dclab::specfun::{gamma_fn, kummer_m, tricomi_u, HypergeometricParams};

fn main() -> dclab::Result<()> {
    let b = (1.0f64 - 0.9 * 0.9).sqrt();
    println!("B = {b:.17}");
    for x in [0.5, -0.5, -2.0 * b, 2.0 * b] {
        println!("Gamma({x:+.6}) = {:.17e}", gamma_fn(x)?);
    }
    let low = HypergeometricParams::new(-b, 1.0 - 2.0 * b)?;
    let high = HypergeometricParams::new(1.0 - b, 2.0 - 2.0 * b)?;
    println!("{:>8} {:>24} {:>24} {:>24} {:>24}", "x", "M(-B,1-2B,x)", "M(1-B,2-2B,x)", "U(-B,1-2B,x)", "U(1-B,2-2B,x)");
    for x in [1e-6, 0.1, 1.0, 5.0, 20.0, 60.0] {
        println!(
            "{x:>8} {:>24.16e} {:>24.16e} {:>24.16e} {:>24.16e}",
            kummer_m(low, x)?,
            kummer_m(high, x)?,
            tricomi_u(low, x)?,
            tricomi_u(high, x)?
        );
    }
    Ok(())
}
