//! beta(E): the extension for which E is an eigenvalue, tabulated across the gap.

use std::sync::Arc;

use dclab::extensions::{cd_constants, Beta};
use dclab::greenop::GreenOperator;
use dclab::homogeneous::Coupling;
use dclab::radial::{GridParams, RadialGrid};
use dclab::spectral::{beta_of_energy, energy_samples};

fn main() -> dclab::Result<()> {
    let c = Coupling::critical(0.9, 1)?;
    let op = GreenOperator::new(&c, Arc::new(RadialGrid::new(GridParams::default())?))?;
    let cd = cd_constants(&op);
    println!("energy,beta");
    for e in energy_samples(-0.95, 0.95, 41) {
        match beta_of_energy(&c, e, cd)? {
            Beta::Finite(b) => println!("{e:.12},{b:.12}"),
            Beta::Infinite => println!("{e:.12},inf"),
        }
    }
    Ok(())
}
