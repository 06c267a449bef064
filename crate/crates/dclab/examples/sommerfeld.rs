//! Regular-condition levels of a sub-critical channel against the fine-structure formula.

use dclab::extensions::{Beta, ExtensionSpec};
use dclab::homogeneous::Coupling;
use dclab::spectral::{eigenvalues_in_gap, sommerfeld_energy};

fn main() -> dclab::Result<()> {
    let nu = -0.5;
    let spec = ExtensionSpec { beta: Beta::Infinite, ratio_target: None };
    for kappa in [-1, 1] {
        let found = eigenvalues_in_gap(&Coupling::new(nu, kappa)?, &spec, (0.5, 0.999), 200)?.energies();
        println!("kappa = {kappa:+}");
        for (k, e) in found.iter().take(4).enumerate() {
            // the n = 0 level exists only for kappa < 0
            let n = k as u32 + u32::from(kappa > 0);
            println!("  n = {n}: computed {e:.12}, formula {:.12}", sommerfeld_energy(nu, n, kappa)?);
        }
    }
    Ok(())
}
