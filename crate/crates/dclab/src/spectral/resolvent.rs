use std::sync::Arc;

use num_complex::Complex64;

use super::shooting::{decaying_solution, outer_radius};
use crate::error::{Error, Result};
use crate::extensions::{extract_boundary_data, Beta, BoundaryData, ExtensionSpec, DEFAULT_WINDOW};
use crate::greenop::GreenOperator;
use crate::homogeneous::Coupling;
use crate::radial::{integrate_ivp_with_source, Direction, RadialGrid, SpinorFunction};

/// `E(beta) = |beta| / (|beta| ||S_D^{-1}|| + 1)`, tending to `1/||S_D^{-1}||` as `beta -> inf`.
pub fn gap_lower_bound(beta: Beta, sd_inv_norm: f64) -> f64 {
    match beta {
        Beta::Finite(b) => b.abs() / (b.abs() * sd_inv_norm + 1.0),
        Beta::Infinite => 1.0 / sd_inv_norm,
    }
}

/// `S_beta^{-1} g = S_D^{-1} g + <Phi, g> Phi / (beta ||Phi||^2)`.
pub fn apply_sbeta_inverse(op: &GreenOperator, spec: &ExtensionSpec, g: &SpinorFunction) -> Result<SpinorFunction> {
    let base = op.apply(g)?;
    match spec.beta {
        Beta::Infinite => Ok(base),
        Beta::Finite(0.0) => Err(Error::NotInvertible("beta = 0 has a kernel spanned by Phi".into())),
        Beta::Finite(b) => {
            let weight = op.phi_pairing(g)? / (b * op.vinf_norm_sq());
            base.axpy(weight, &op.phi())
        }
    }
}

/// Inward solution of `(S - E) u = source` with `u = 0` at `outer`, sampled on `grid`.
fn inward_particular(
    c: &Coupling,
    e: f64,
    outer: f64,
    grid: &Arc<RadialGrid>,
    source: &dyn Fn(f64) -> [Complex64; 2],
) -> Result<SpinorFunction> {
    let nodes = grid.nodes();
    let zero = [Complex64::default(); 2];
    let traj = integrate_ivp_with_source(c, e, outer, zero, Direction::Inward, grid.r_min(), nodes, source)?;
    if traj.radii.len() != nodes.len() + 1 {
        return Err(Error::InvalidRange(format!("grid extends beyond the outer radius {outer}")));
    }
    let (up, lo) = traj.values[..nodes.len()].iter().rev().map(|v| (v[0], v[1])).unzip();
    SpinorFunction::new(grid.clone(), up, lo)
}

/// Combination coefficient making `u + A h` satisfy the boundary condition.
fn condition_weight(u: &BoundaryData, h: &BoundaryData, target: Option<f64>) -> Complex64 {
    match target {
        Some(t) => -(u.g1[0] - u.g0[0] * t) / (h.g1[0] - h.g0[0] * t),
        None => -u.g0[0] / h.g0[0],
    }
}

/// Solves `S u = source` with the boundary condition of `spec` at the origin and decay
/// at infinity by shooting, independently of the Green kernel.
///
/// The source must decay faster than `e^{-r}`: the inward particular solution
/// started from zero picks up `source(R) / v_inf(R)` times the decaying solution,
/// and removing that multiple costs digits otherwise.
pub fn solve_with_condition(
    c: &Coupling,
    spec: &ExtensionSpec,
    grid: &Arc<RadialGrid>,
    source: &dyn Fn(f64) -> [Complex64; 2],
) -> Result<SpinorFunction> {
    let outer = grid.r_max().max(outer_radius(c, 0.0));
    let particular = inward_particular(c, 0.0, outer, grid, source)?;
    let free = decaying_solution(c, 0.0, grid)?;
    let (bp, bh) = (
        extract_boundary_data(c, &particular, DEFAULT_WINDOW)?,
        extract_boundary_data(c, &free, DEFAULT_WINDOW)?,
    );
    particular.axpy(condition_weight(&bp, &bh, spec.ratio_target), &free)
}

/// `Phi(z) = Phi + z (S_D - z)^{-1} Phi` for real `z` in the resolvent set of `S_D`.
///
/// `w = z (S_D - z)^{-1} Phi` is the decaying solution of `(S - z) w = z Phi` with no
/// `r^{-B}` term at the origin.
pub fn krein_phi_z(op: &GreenOperator, z: f64) -> Result<SpinorFunction> {
    let phi = op.phi();
    if z == 0.0 {
        return Ok(phi);
    }
    if !(z.abs() < 1.0) {
        return Err(Error::InvalidParams(format!("z = {z} must lie in the gap (-1, 1)")));
    }
    let c = *op.coupling();
    let grid = op.grid();
    let fs = op.system().clone();
    let source = move |r: f64| {
        let v = fs.v_inf(r).unwrap_or([0.0; 2]);
        [Complex64::from(z * v[0]), Complex64::from(z * v[1])]
    };
    let outer = grid.r_max().max(outer_radius(&c, z));
    let particular = inward_particular(&c, z, outer, grid, &source)?;
    let free = decaying_solution(&c, z, grid)?;
    let (bp, bh) = (
        extract_boundary_data(&c, &particular, DEFAULT_WINDOW)?,
        extract_boundary_data(&c, &free, DEFAULT_WINDOW)?,
    );
    let conditioning = bh.g0[0].norm() / (bh.g0[0].norm() + bh.g1[0].norm());
    if conditioning < 1e-6 {
        log::warn!("krein_phi_z: z = {z} is close to an eigenvalue of the distinguished extension");
    }
    let w = particular.axpy(condition_weight(&bp, &bh, None), &free)?;
    phi.add(&w)
}
