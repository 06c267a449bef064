//! Decomposition of adjoint-domain spinors and the closure certificate.

use std::sync::Arc;

use num_complex::Complex64;

use dclab::extensions::{closure_membership, decompose_adjoint, singular_coefficient, MEMBERSHIP_TOLERANCE};
use dclab::greenop::GreenOperator;
use dclab::homogeneous::Coupling;
use dclab::radial::{apply_dirac, GridParams, RadialGrid, SpinorFunction};

fn main() -> dclab::Result<()> {
    let c = Coupling::critical(0.9, 1)?;
    let grid = Arc::new(RadialGrid::new(GridParams::default())?);
    let op = GreenOperator::new(&c, grid.clone())?;
    let bump = SpinorFunction::from_real_fn(grid, |r| {
        if r <= 0.5 || r >= 4.0 {
            return [0.0, 0.0];
        }
        let s = (-1.0 / ((r - 0.5) * (4.0 - r))).exp();
        [s * r.cos(), s * (2.0 * r).sin()]
    });
    let phi = op.phi();
    let sd_phi = op.apply(&phi)?;
    let member = bump.add(&phi.axpy(Complex64::from(2.0), &sd_phi)?)?;
    for (name, g) in [("bump", &bump), ("Phi", &phi), ("bump + Phi + 2 S_D^-1 Phi", &member)] {
        let sg = apply_dirac(&c, 0.0, g).values;
        let dec = decompose_adjoint(&op, g, &sg)?;
        let cert = closure_membership(&dec, MEMBERSHIP_TOLERANCE);
        println!("{name}: a0 = {:.6}, a_inf = {:.6}, in closure: {}", dec.a0, dec.a_inf, cert.member);
    }
    let sg = apply_dirac(&c, 0.0, &member).values;
    let coef = singular_coefficient(&op, &member, 2.0, &sg)?;
    println!("coefficient of Phi: limit {:.8}, integral {:.8}, disagreement {:.1e}", coef.limit, coef.integral, coef.disagreement);
    Ok(())
}
