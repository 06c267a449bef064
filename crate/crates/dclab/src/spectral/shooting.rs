use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extensions::{Beta, BoundaryData, ExtensionSpec};
use crate::homogeneous::{Coupling, FrobeniusPair};
use crate::radial::{integrate_real, RadialGrid, SpinorFunction};

/// Radius at which the shot solution is projected onto the Frobenius pair.
pub const PROBE_RADIUS: f64 = 1e-2;
/// Smallest and largest starting radius for inward shooting.
pub const MIN_OUTER_RADIUS: f64 = 40.0;
pub const MAX_OUTER_RADIUS: f64 = 4000.0;
/// Energy resolution of the bisection.
pub const ENERGY_TOLERANCE: f64 = 1e-9;
/// Largest boundary residual accepted for a reported eigenvalue.
pub const ROOT_RESIDUAL: f64 = 1e-4;
/// Largest jump of the root function across a final bracket that still counts as a crossing.
pub const CONTINUITY_TOLERANCE: f64 = 1e-2;
/// Largest tolerated change of the boundary ratio when the outer radius doubles.
pub const OUTER_RADIUS_TOLERANCE: f64 = 1e-4;

/// Starting radius for inward shooting at energy `e`: past the turning point by
/// many decay lengths.
pub fn outer_radius(c: &Coupling, e: f64) -> f64 {
    let lambda = (1.0 - e * e).sqrt();
    let turn = c.nu().abs() / (1.0 - e.abs());
    (2.0 * turn + 25.0 / lambda).clamp(MIN_OUTER_RADIUS, MAX_OUTER_RADIUS)
}

/// Short-distance coefficients of the solution decaying at infinity, in the
/// Frobenius normalisation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShotData {
    pub energy: f64,
    pub g0: [f64; 2],
    pub g1: [f64; 2],
}

impl ShotData {
    /// `(g0+, g1+)` scaled to unit length, with the sign fixed by the shot.
    pub fn upper_direction(&self) -> [f64; 2] {
        let n = self.g0[0].hypot(self.g1[0]);
        [self.g0[0] / n, self.g1[0] / n]
    }

    pub fn boundary_data(&self) -> BoundaryData {
        let z = |v: [f64; 2]| [Complex64::from(v[0]), Complex64::from(v[1])];
        BoundaryData {
            g0: z(self.g0),
            g1: z(self.g1),
            fit_residual: 0.0,
            agreement: 0.0,
            flagged: false,
            data_scale: self.g0[0].abs().max(self.g1[0].abs()),
        }
    }
}

fn check_energy(e: f64) -> Result<()> {
    if !(e.abs() < 1.0) {
        return Err(Error::InvalidParams(format!("energy {e} outside the gap (-1, 1)")));
    }
    Ok(())
}

/// Decaying direction of the large-distance system; the amplitude is irrelevant.
fn decaying_start(e: f64) -> [f64; 2] {
    [(1.0 + e).sqrt(), -(1.0 - e).sqrt()]
}

fn shoot_from(c: &Coupling, e: f64, outer: f64) -> Result<ShotData> {
    let start = decaying_start(e);
    let (_, vals) = integrate_real(c, e, outer, start, PROBE_RADIUS, &[])?;
    let u = vals[vals.len() - 1];
    let scale = u[0].abs().max(u[1].abs());
    let u = [u[0] / scale, u[1] / scale];
    let (g0, g1) = FrobeniusPair::new(c, e).boundary_coefficients(PROBE_RADIUS, u);
    Ok(ShotData { energy: e, g0, g1 })
}

/// Boundary data of the solution decaying at infinity.
pub fn shoot(c: &Coupling, e: f64) -> Result<ShotData> {
    check_energy(e)?;
    shoot_from(c, e, outer_radius(c, e))
}

/// The decaying solution at energy `e` on `grid`, normalised to unit norm.
pub fn decaying_solution(c: &Coupling, e: f64, grid: &Arc<RadialGrid>) -> Result<SpinorFunction> {
    check_energy(e)?;
    let outer = outer_radius(c, e).max(grid.r_max());
    let here = shoot_from(c, e, outer)?;
    let further = shoot_from(c, e, (2.0 * outer).min(2.0 * MAX_OUTER_RADIUS))?;
    let (a, b) = (here.upper_direction(), further.upper_direction());
    let moved = (a[0] * b[1] - a[1] * b[0]).abs();
    if moved > OUTER_RADIUS_TOLERANCE {
        log::warn!("decaying_solution: boundary ratio moves by {moved:.1e} when the outer radius doubles");
    }
    let start = decaying_start(e);
    let nodes = grid.nodes();
    let (radii, vals) = integrate_real(c, e, outer, start, grid.r_min(), nodes)?;
    // radii run inward through every node and end at r_min
    if radii.len() != nodes.len() + 1 {
        return Err(Error::InvalidRange(format!("grid extends beyond the shooting radius {outer}")));
    }
    let (up, lo): (Vec<Complex64>, Vec<Complex64>) =
        vals[..nodes.len()].iter().rev().map(|v| (Complex64::from(v[0]), Complex64::from(v[1]))).unzip();
    let f = SpinorFunction::new(grid.clone(), up, lo)?;
    let n = f.norm();
    Ok(f.scale(Complex64::from(1.0 / n)))
}

/// `beta(E) = (g1+/g0+ - d) / c`, infinite when the singular coefficient vanishes.
pub fn beta_of_energy(c: &Coupling, e: f64, (c_nu, d_nu): (f64, f64)) -> Result<Beta> {
    let shot = shoot(c, e)?;
    Ok(beta_from_shot(&shot, (c_nu, d_nu)))
}

pub(crate) fn beta_from_shot(shot: &ShotData, (c_nu, d_nu): (f64, f64)) -> Beta {
    let [s, r] = shot.upper_direction();
    if s.abs() <= 1e-14 {
        return Beta::Infinite;
    }
    Beta::Finite((r / s - d_nu) / c_nu)
}

/// Scale-free condition whose zeros are eigenvalues of the extension.
fn root_function(shot: &ShotData, target: Option<f64>) -> f64 {
    let [s, r] = shot.upper_direction();
    match target {
        Some(t) => (r - t * s) / (1.0 + t * t).sqrt(),
        None => s,
    }
}

/// Energies spaced uniformly in `E / sqrt(1 - E^2)`, dense near the gap edges.
pub fn energy_samples(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let to_t = |e: f64| e / (1.0 - e * e).sqrt();
    let (a, b) = (to_t(lo), to_t(hi));
    (0..n)
        .map(|k| {
            let t = a + (b - a) * k as f64 / (n - 1) as f64;
            t / (1.0 + t * t).sqrt()
        })
        .collect()
}

/// One discrete eigenvalue with its boundary data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub energy: f64,
    pub residual: f64,
    pub boundary_data: ShotData,
}

/// Discrete spectrum of one extension in an energy window.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralReport {
    pub nu: f64,
    pub kappa: i32,
    pub beta: Beta,
    pub energy_range: (f64, f64),
    pub scan_points: usize,
    pub eigenvalues: Vec<Eigenvalue>,
    pub gap_bound: Option<f64>,
    pub sd_inv_norm: Option<f64>,
}

impl SpectralReport {
    /// Attaches `||S_D^{-1}||` and the gap bound it implies.
    pub fn with_norm(mut self, sd_inv_norm: f64) -> Self {
        self.sd_inv_norm = Some(sd_inv_norm);
        self.gap_bound = Some(super::gap_lower_bound(self.beta, sd_inv_norm));
        self
    }

    pub fn energies(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|e| e.energy).collect()
    }
}

/// Largest turn of the boundary direction tolerated between neighbouring scan samples.
const MAX_TURN: f64 = std::f64::consts::FRAC_PI_4;
/// Bound on the rounds of scan refinement.
const MAX_REFINEMENTS: usize = 40;

/// Angle between the boundary directions of two shots.
fn turn(a: &ShotData, b: &ShotData) -> f64 {
    let ([s0, r0], [s1, r1]) = (a.upper_direction(), b.upper_direction());
    (s0 * r1 - r0 * s1).atan2(s0 * s1 + r0 * r1).abs()
}

/// Shoots at `samples` and bisects every interval over which the boundary
/// direction turns by more than [`MAX_TURN`], so that no pair of roots can hide
/// between neighbours where the levels accumulate at the gap edge.
fn refine_scan(c: &Coupling, samples: Vec<f64>) -> Result<Vec<ShotData>> {
    let mut shots = samples.par_iter().map(|&e| shoot(c, e)).collect::<Result<Vec<_>>>()?;
    for _ in 0..MAX_REFINEMENTS {
        let wide: Vec<f64> = shots
            .windows(2)
            .filter(|w| turn(&w[0], &w[1]) > MAX_TURN && w[1].energy - w[0].energy > ENERGY_TOLERANCE)
            .map(|w| 0.5 * (w[0].energy + w[1].energy))
            .collect();
        if wide.is_empty() {
            return Ok(shots);
        }
        let extra = wide.par_iter().map(|&e| shoot(c, e)).collect::<Result<Vec<_>>>()?;
        shots.extend(extra);
        shots.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    }
    log::warn!("scan refinement stopped after {MAX_REFINEMENTS} rounds with {} samples", shots.len());
    Ok(shots)
}

/// Eigenvalues of the extension `spec` in `range` by scanning and bisecting the
/// boundary condition along the decaying solution.
pub fn eigenvalues_in_gap(c: &Coupling, spec: &ExtensionSpec, range: (f64, f64), n_scan: usize) -> Result<SpectralReport> {
    let (lo, hi) = range;
    if !(-1.0 < lo && lo < hi && hi < 1.0) {
        return Err(Error::InvalidRange(format!("energy range ({lo}, {hi}) must lie inside (-1, 1)")));
    }
    if n_scan < 2 {
        return Err(Error::InvalidParams(format!("scan needs at least 2 points, got {n_scan}")));
    }
    let target = spec.ratio_target;
    let shots = refine_scan(c, energy_samples(lo, hi, n_scan))?;
    let values: Vec<f64> = shots.iter().map(|s| root_function(s, target)).collect();
    let brackets: Vec<[f64; 4]> = (0..shots.len() - 1)
        .filter_map(|k| {
            let (fa, fb) = (values[k], values[k + 1]);
            if fa == 0.0 {
                Some([shots[k].energy, shots[k].energy, fa, fa])
            } else if fa * fb < 0.0 {
                Some([shots[k].energy, shots[k + 1].energy, fa, fb])
            } else {
                None
            }
        })
        .collect();
    let roots: Vec<Option<Eigenvalue>> = brackets
        .par_iter()
        .map(|&bracket| bisect(c, target, bracket))
        .collect::<Result<Vec<_>>>()?;
    let eigenvalues = roots.into_iter().flatten().collect();
    Ok(SpectralReport {
        nu: c.nu(),
        kappa: c.kappa(),
        beta: spec.beta,
        energy_range: range,
        scan_points: n_scan,
        eigenvalues,
        gap_bound: None,
        sd_inv_norm: None,
    })
}

/// Bisects a sign change of the root function down to [`ENERGY_TOLERANCE`].
///
/// A root is kept if its boundary residual is small or, where the boundary
/// direction turns steeply, if the root function is continuous across the final
/// bracket; a jump there means the sign change was not a crossing.
fn bisect(c: &Coupling, target: Option<f64>, [mut a, mut b, mut fa, mut fb]: [f64; 4]) -> Result<Option<Eigenvalue>> {
    while b - a > ENERGY_TOLERANCE {
        let m = 0.5 * (a + b);
        let fm = root_function(&shoot(c, m)?, target);
        if fm == 0.0 {
            (a, b, fa, fb) = (m, m, fm, fm);
            break;
        }
        if fm.signum() == fa.signum() {
            (a, fa) = (m, fm);
        } else {
            (b, fb) = (m, fm);
        }
    }
    let energy = 0.5 * (a + b);
    let shot = shoot(c, energy)?;
    let [s, r] = shot.upper_direction();
    let residual = match target {
        Some(t) => (r - t * s).abs() / (r.abs() + s.abs()),
        None => s.abs() / (r.abs() + s.abs()),
    };
    if residual > ROOT_RESIDUAL && (fb - fa).abs() > CONTINUITY_TOLERANCE {
        log::warn!("discarding bracket near E = {energy}: boundary residual {residual:.1e}, jump {:.1e}", (fb - fa).abs());
        return Ok(None);
    }
    Ok(Some(Eigenvalue { energy, residual, boundary_data: shot }))
}
