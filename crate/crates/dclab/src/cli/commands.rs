use std::io::BufReader;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::RunConfig;
use super::output::{Artifact, Table};
use crate::error::{Error, Result};
use crate::extensions::{
    boundary_residual, cd_constants, closure_membership, decompose_adjoint, extract_boundary_data, Beta,
    BoundaryData, ExtensionSpec, MembershipCertificate,
};
use crate::greenop::{estimate_sd_inverse_norm, green_kernel, GreenOperator};
use crate::homogeneous::{build_fundamental_system, Coupling};
use crate::radial::{apply_dirac, io, RadialGrid};
use crate::spectral::{beta_of_energy, eigenvalues_in_gap, energy_samples, gap_lower_bound};

/// Slack allowed below the gap bound when a sweep cell is judged.
pub const GAP_SLACK: f64 = 1e-6;

fn critical(config: &RunConfig) -> Result<Coupling> {
    Coupling::critical(config.single_nu()?, config.kappa)
}

fn operator(config: &RunConfig, c: &Coupling) -> Result<GreenOperator> {
    GreenOperator::new(c, Arc::new(RadialGrid::new(config.grid)?))
}

/// Closed-form and quadrature constants of one critical channel.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Constants {
    pub nu: f64,
    pub kappa: i32,
    pub exponent: f64,
    pub wronskian: f64,
    pub q_plus: f64,
    pub q_minus: f64,
    pub singular_lead: [f64; 2],
    pub vinf_norm_sq: f64,
    pub p_plus: f64,
    pub p_minus: f64,
    pub c_nu: f64,
    pub d_nu: f64,
}

pub fn constants(config: &RunConfig) -> Result<Artifact> {
    let c = critical(config)?;
    let op = operator(config, &c)?;
    let fs = op.system();
    let (p_plus, p_minus) = op.p_pm();
    let (c_nu, d_nu) = cd_constants(&op);
    Artifact::json(&Constants {
        nu: c.nu(),
        kappa: c.kappa(),
        exponent: fs.exponent(),
        wronskian: fs.w0_inf(),
        q_plus: fs.q_plus(),
        q_minus: fs.q_minus(),
        singular_lead: fs.singular_lead(),
        vinf_norm_sq: op.vinf_norm_sq(),
        p_plus,
        p_minus,
        c_nu,
        d_nu,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KernelValue {
    pub r: f64,
    pub rho: f64,
    pub matrix: [[f64; 2]; 2],
}

pub fn kernel(config: &RunConfig) -> Result<Artifact> {
    let c = critical(config)?;
    let (r, rho) = match (config.r, config.rho) {
        (Some(r), Some(rho)) => (r, rho),
        _ => return Err(Error::InvalidParams("kernel needs --r and --rho".into())),
    };
    Artifact::json(&KernelValue { r, rho, matrix: green_kernel(&c, r, rho)? })
}

pub fn dump_solutions(config: &RunConfig) -> Result<Artifact> {
    let c = critical(config)?;
    let fs = build_fundamental_system(&c)?;
    let grid = RadialGrid::new(config.grid)?;
    let rows = grid
        .nodes()
        .par_iter()
        .map(|&r| {
            let (v0, vi) = (fs.v0(r)?, fs.v_inf(r)?);
            Ok(vec![r, v0[0], v0[1], vi[0], vi[1]])
        })
        .collect::<Result<Vec<_>>>()?;
    let columns = ["r", "v0_upper", "v0_lower", "vinf_upper", "vinf_lower"].map(String::from).to_vec();
    Ok(Artifact::Table(Table { columns, rows }))
}

/// Boundary residual of the input against one extension.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub beta: Beta,
    pub ratio_target: Option<f64>,
    pub residual: Option<f64>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Classification {
    pub boundary_data: BoundaryData,
    pub conditions: Vec<ConditionCheck>,
    pub a0: Option<Complex64>,
    pub a_inf: Option<Complex64>,
    pub limit_spread: Option<f64>,
    pub certificate: Option<MembershipCertificate>,
    pub note: Option<String>,
}

pub fn classify(config: &RunConfig) -> Result<Artifact> {
    let c = critical(config)?;
    let path = config.input.as_ref().ok_or_else(|| Error::InvalidParams("classify needs --input".into()))?;
    let file = std::fs::File::open(path)
        .map_err(|e| Error::InvalidParams(format!("cannot open {}: {e}", path.display())))?;
    let g = io::read_csv(BufReader::new(file))?;
    let op = GreenOperator::new(&c, g.grid().clone())?;
    let bd = extract_boundary_data(&c, &g, config.window)?;
    let cd = cd_constants(&op);
    let conditions = config
        .beta
        .iter()
        .map(|&beta| {
            let spec = ExtensionSpec::new(beta, cd);
            let (residual, note) = match boundary_residual(&spec, &bd) {
                Ok(x) => (Some(x), None),
                Err(e) => (None, Some(e.to_string())),
            };
            ConditionCheck { beta, ratio_target: spec.ratio_target, residual, note }
        })
        .collect();
    let sg = apply_dirac(&c, 0.0, &g).values;
    let mut out =
        Classification { boundary_data: bd, conditions, a0: None, a_inf: None, limit_spread: None, certificate: None, note: None };
    match decompose_adjoint(&op, &g, &sg) {
        Ok(dec) => {
            out.a0 = Some(dec.a0);
            out.a_inf = Some(dec.a_inf);
            out.limit_spread = Some(dec.spread);
            out.certificate = Some(closure_membership(&dec, config.tolerance));
        }
        Err(e) => out.note = Some(format!("decomposition unavailable: {e}")),
    }
    Artifact::json(&out)
}

pub fn spectrum(config: &RunConfig) -> Result<Artifact> {
    let nu = config.single_nu()?;
    let beta = config.single_beta()?;
    let range = (config.emin, config.emax);
    // the regular condition needs no extension constants, so it also covers sub-critical channels
    let report = match beta {
        Beta::Infinite if !config.with_norm => {
            let c = Coupling::new(nu, config.kappa)?;
            let spec = ExtensionSpec { beta, ratio_target: None };
            eigenvalues_in_gap(&c, &spec, range, config.scan)?
        }
        _ => {
            let c = critical(config)?;
            let op = operator(config, &c)?;
            let spec = ExtensionSpec::new(beta, cd_constants(&op));
            let report = eigenvalues_in_gap(&c, &spec, range, config.scan)?;
            if config.with_norm {
                report.with_norm(estimate_sd_inverse_norm(&op, config.seed)?.value)
            } else {
                report
            }
        }
    };
    Artifact::json(&report)
}

pub fn flow(config: &RunConfig) -> Result<Artifact> {
    let c = critical(config)?;
    let op = operator(config, &c)?;
    let cd = cd_constants(&op);
    let rows = energy_samples(config.emin, config.emax, config.points)
        .par_iter()
        .map(|&e| {
            let beta = match beta_of_energy(&c, e, cd)? {
                Beta::Finite(b) => b,
                Beta::Infinite => f64::INFINITY,
            };
            Ok(vec![e, beta])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Artifact::Table(Table { columns: vec!["energy".into(), "beta".into()], rows }))
}

/// One `(nu, beta)` cell of a sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepCell {
    pub nu: f64,
    pub beta: Beta,
    pub sd_inv_norm: f64,
    pub gap_bound: f64,
    pub energies: Vec<f64>,
    pub min_abs_energy: Option<f64>,
    pub bound_holds: bool,
}

/// Eigenvalues and gap bounds over `nu x beta`, cells evaluated in parallel and reported in order.
pub fn sweep_cells(config: &RunConfig) -> Result<Vec<SweepCell>> {
    let grid = Arc::new(RadialGrid::new(config.grid)?);
    let per_nu = config
        .nu
        .par_iter()
        .map(|&nu| {
            let c = Coupling::critical(nu, config.kappa)?;
            let op = GreenOperator::new(&c, grid.clone())?;
            let norm = estimate_sd_inverse_norm(&op, config.seed)?.value;
            Ok((c, cd_constants(&op), norm))
        })
        .collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(usize, Beta)> =
        (0..per_nu.len()).flat_map(|i| config.beta.iter().map(move |&b| (i, b))).collect();
    jobs.par_iter()
        .map(|&(i, beta)| {
            let (c, cd, norm) = &per_nu[i];
            let spec = ExtensionSpec::new(beta, *cd);
            let report = eigenvalues_in_gap(c, &spec, (config.emin, config.emax), config.scan)?;
            let energies = report.energies();
            let bound = gap_lower_bound(beta, *norm);
            let min_abs_energy = energies.iter().map(|e| e.abs()).reduce(f64::min);
            let bound_holds = energies.iter().all(|e| e.abs() >= bound - GAP_SLACK);
            Ok(SweepCell { nu: c.nu(), beta, sd_inv_norm: *norm, gap_bound: bound, energies, min_abs_energy, bound_holds })
        })
        .collect()
}

pub fn sweep(config: &RunConfig) -> Result<Artifact> {
    Artifact::json(&sweep_cells(config)?)
}

pub fn sdinv_norm(config: &RunConfig) -> Result<Artifact> {
    let c = critical(config)?;
    let op = operator(config, &c)?;
    Artifact::json(&estimate_sd_inverse_norm(&op, config.seed)?)
}
