//! Eigenvalues in the gap for several extensions, with the lower bound on the gap.

use std::sync::Arc;

use dclab::extensions::{cd_constants, Beta, ExtensionSpec};
use dclab::greenop::{estimate_sd_inverse_norm, GreenOperator, DEFAULT_SEED};
use dclab::homogeneous::Coupling;
use dclab::radial::{GridParams, RadialGrid};
use dclab::spectral::eigenvalues_in_gap;

fn main() -> dclab::Result<()> {
    let c = Coupling::critical(0.9, 1)?;
    let op = GreenOperator::new(&c, Arc::new(RadialGrid::new(GridParams::default())?))?;
    let norm = estimate_sd_inverse_norm(&op, DEFAULT_SEED)?.value;
    for beta in [Beta::Finite(-1.0), Beta::Finite(0.0), Beta::Finite(0.25), Beta::Finite(4.0), Beta::Infinite] {
        let spec = ExtensionSpec::new(beta, cd_constants(&op));
        let report = eigenvalues_in_gap(&c, &spec, (-0.99, 0.99), 200)?.with_norm(norm);
        let energies: Vec<String> = report.energies().iter().map(|e| format!("{e:.9}")).collect();
        println!("beta = {beta:>5}: bound {:.6}, E = [{}]", report.gap_bound.unwrap_or(0.0), energies.join(", "));
    }
    Ok(())
}
