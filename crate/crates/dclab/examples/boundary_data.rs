//! Boundary data of members of the extension family and the residual of each boundary condition.

use std::sync::Arc;

use num_complex::Complex64;

use dclab::extensions::{boundary_residual, cd_constants, channel_census, extract_boundary_data, Beta, ExtensionSpec, DEFAULT_WINDOW};
use dclab::greenop::GreenOperator;
use dclab::homogeneous::Coupling;
use dclab::radial::{GridParams, RadialGrid};

fn main() -> dclab::Result<()> {
    let open: Vec<_> = channel_census(0.9, 2.5)?.into_iter().filter(|ch| ch.index == 1).collect();
    println!("channels needing a boundary condition at nu = 0.9: {open:?}");

    let c = Coupling::critical(0.9, 1)?;
    let op = GreenOperator::new(&c, Arc::new(RadialGrid::new(GridParams::default())?))?;
    let (c_nu, d_nu) = cd_constants(&op);
    println!("c_nu = {c_nu:.12}, d_nu = {d_nu:.12}");
    let phi = op.phi();
    let sd_phi = op.apply(&phi)?;
    let betas = [Beta::Finite(-2.0), Beta::Finite(0.0), Beta::Finite(1.5), Beta::Infinite];
    for member in [-2.0, 0.0, 1.5] {
        let g = phi.axpy(Complex64::from(member), &sd_phi)?;
        let bd = extract_boundary_data(&c, &g, DEFAULT_WINDOW)?;
        print!("Phi + {member:+} S_D^-1 Phi: g0+ = {:.9}, g1+ = {:.9}; residuals", bd.g0[0].re, bd.g1[0].re);
        for beta in betas {
            print!("  beta={beta}: {:.1e}", boundary_residual(&ExtensionSpec::new(beta, (c_nu, d_nu)), &bd)?);
        }
        println!();
    }
    Ok(())
}
