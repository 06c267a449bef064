//! Inverse of an extension as a rank-one change of the Green inverse, and the Krein family at z.

use std::sync::Arc;

use num_complex::Complex64;

use dclab::extensions::{cd_constants, Beta, ExtensionSpec};
use dclab::greenop::GreenOperator;
use dclab::homogeneous::Coupling;
use dclab::radial::{GridParams, RadialGrid, SpinorFunction};
use dclab::spectral::{apply_sbeta_inverse, krein_phi_z, solve_with_condition};

fn main() -> dclab::Result<()> {
    let c = Coupling::critical(0.9, 1)?;
    let grid = Arc::new(RadialGrid::new(GridParams::default())?);
    let op = GreenOperator::new(&c, grid.clone())?;
    let src = |r: f64| [Complex64::from(r * (-1.5 * r).exp()), Complex64::from((1.0 - r) * (-2.0 * r).exp())];
    let h = SpinorFunction::from_fn(grid.clone(), src);
    for beta in [-3.0, 0.5, 2.0] {
        let spec = ExtensionSpec::new(Beta::Finite(beta), cd_constants(&op));
        let rank_one = apply_sbeta_inverse(&op, &spec, &h)?;
        let direct = solve_with_condition(&c, &spec, &grid, &src)?;
        println!("beta = {beta:+}: relative gap to the boundary-value solve {:.2e}", rank_one.sub(&direct)?.norm() / rank_one.norm());
    }
    for z in [-0.5, 0.1, 0.4] {
        let phi_z = krein_phi_z(&op, z)?;
        println!("z = {z:+}: ||Phi_z|| = {:.9}", phi_z.norm());
    }
    Ok(())
}
