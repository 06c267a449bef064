//! The Green inverse of the distinguished extension: kernel, residual, p constants and norm.

use std::sync::Arc;

use dclab::greenop::{estimate_sd_inverse_norm, GreenOperator, DEFAULT_SEED};
use dclab::homogeneous::Coupling;
use dclab::radial::{apply_dirac, GridParams, RadialGrid, SpinorFunction};

fn main() -> dclab::Result<()> {
    let c = Coupling::critical(0.9, 1)?;
    let grid = Arc::new(RadialGrid::new(GridParams::default())?);
    let op = GreenOperator::new(&c, grid.clone())?;
    println!("kernel at (1, 2): {:?}", op.kernel(1.0, 2.0)?);

    let g = SpinorFunction::from_real_fn(grid, |r| [(1.0 - r) * (-r).exp(), r * r * (-2.0 * r).exp()]);
    let f = op.apply(&g)?;
    let back = apply_dirac(&c, 0.0, &f);
    println!("||S f - g|| / ||g|| = {:.3e}", back.relative_residual(&g));

    let (p_plus, p_minus) = op.p_pm();
    println!("||v_inf||^2 = {:.17e}", op.vinf_norm_sq());
    println!("p = ({p_plus:.17e}, {p_minus:.17e})");
    let est = estimate_sd_inverse_norm(&op, DEFAULT_SEED)?;
    println!("||S_D^-1|| ~ {:.12} after {} iterations", est.value, est.iterations);
    Ok(())
}
