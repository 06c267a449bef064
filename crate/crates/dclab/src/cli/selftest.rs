use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::extensions::{
    cd_constants, channel_census, extract_boundary_data, Beta, DEFAULT_WINDOW,
};
use crate::greenop::GreenOperator;
use crate::homogeneous::{build_fundamental_system, wronskian_real, Coupling};
use crate::radial::{apply_dirac, GridParams, RadialGrid, SpinorFunction};
use crate::specfun::{gamma_fn, kummer_m, HypergeometricParams};

/// Outcome of one invariant check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn new(name: &str, error: f64, tolerance: f64) -> Self {
        Self { name: name.into(), error, tolerance, passed: error <= tolerance }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Fast invariants across every module at `nu = 0.9`, `kappa = 1`.
pub fn run_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    out.push(Check::new("gamma(1/2) = sqrt(pi)", rel(gamma_fn(0.5)?, PI.sqrt()), 1e-14));
    let m = kummer_m(HypergeometricParams::new(1.3, 1.3)?, 2.0)?;
    out.push(Check::new("M(a, a, x) = e^x", rel(m, 2f64.exp()), 1e-13));

    let c = Coupling::critical(0.9, 1)?;
    let fs = build_fundamental_system(&c)?;
    let worst = [1e-6, 1e-3, 0.1, 1.0, 5.0, 20.0]
        .iter()
        .map(|&r| Ok(rel(wronskian_real(fs.v0(r)?, fs.v_inf(r)?), fs.w0_inf())))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    out.push(Check::new("Wronskian of v0, v_inf is constant", worst, 1e-9));

    let census = channel_census(0.9, 0.5)?;
    let open = census.iter().filter(|ch| ch.index == 1).count() as f64;
    out.push(Check::new("four critical channels at j = 1/2", (open - 4.0).abs(), 0.0));

    let grid = Arc::new(RadialGrid::new(GridParams::default())?);
    let op = GreenOperator::new(&c, grid.clone())?;
    let g = SpinorFunction::from_real_fn(grid, |r| [r * (-r).exp(), r * r * (-1.5 * r).exp()]);
    let sg = op.apply(&g)?;
    let residual = apply_dirac(&c, 0.0, &sg).relative_residual(&g);
    out.push(Check::new("S applied to the Green inverse is the identity", residual, 1e-6));

    let (p_plus, p_minus) = op.p_pm();
    out.push(Check::new("p+/p- = q+/q-", rel(p_plus / p_minus, fs.q_plus() / fs.q_minus()), 1e-12));

    let (c_nu, d_nu) = cd_constants(&op);
    let beta = 0.5;
    let phi = op.phi();
    let member = phi.axpy(Complex64::from(beta), &op.apply(&phi)?)?;
    let bd = extract_boundary_data(&c, &member, DEFAULT_WINDOW)?;
    let ratio = (bd.g1[0] / bd.g0[0]).re;
    out.push(Check::new("boundary ratio of Phi + beta S_D^-1 Phi", rel(ratio, c_nu * beta + d_nu), 1e-3));
    let parsed = Beta::parse("inf")? == Beta::Infinite;
    out.push(Check::new("beta parses infinity", if parsed { 0.0 } else { 1.0 }, 0.0));
    Ok(out)
}
