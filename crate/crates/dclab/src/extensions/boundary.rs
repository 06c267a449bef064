use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::greenop::GreenOperator;
use crate::homogeneous::Coupling;
use crate::radial::SpinorFunction;

/// Default fit window for short-distance coefficients.
pub const DEFAULT_WINDOW: (f64, f64) = (1e-6, 1e-3);
/// Number of grid nodes used in the fit.
pub const FIT_NODES: usize = 40;
/// Relative residual above which a fit is rejected.
pub const FIT_TOLERANCE: f64 = 1e-4;
/// Relative disagreement between the two half-window fits above which a fit is flagged.
pub const AGREEMENT_TOLERANCE: f64 = 1e-3;

/// Coefficients below this fraction of the data scale count as vanishing.
pub const DEGENERATE_TOLERANCE: f64 = 1e-7;

/// `beta` in `R ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Beta {
    Finite(f64),
    Infinite,
}

impl Beta {
    /// Parses a number or `inf`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if matches!(t.to_ascii_lowercase().as_str(), "inf" | "infinity" | "∞") {
            return Ok(Beta::Infinite);
        }
        let v: f64 = t.parse().map_err(|_| Error::InvalidParams(format!("beta = {text:?}")))?;
        if !v.is_finite() {
            return Ok(Beta::Infinite);
        }
        Ok(Beta::Finite(v))
    }
}

impl std::fmt::Display for Beta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Beta::Finite(b) => write!(f, "{b}"),
            Beta::Infinite => write!(f, "inf"),
        }
    }
}

/// The boundary condition of one extension: `g1+ = (c beta + d) g0+`, or `g0 = 0` at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtensionSpec {
    pub beta: Beta,
    pub ratio_target: Option<f64>,
}

impl ExtensionSpec {
    pub fn new(beta: Beta, (c_nu, d_nu): (f64, f64)) -> Self {
        let ratio_target = match beta {
            Beta::Finite(b) => Some(c_nu * b + d_nu),
            Beta::Infinite => None,
        };
        Self { beta, ratio_target }
    }
}

/// `(c_nu, d_nu) = (p+, q+) / gamma` with `gamma` the upper singular coefficient of `Phi`.
pub fn cd_constants(op: &GreenOperator) -> (f64, f64) {
    let gamma = op.system().gamma_plus();
    (op.p_pm().0 / gamma, op.system().q_plus() / gamma)
}

/// Short-distance coefficients `g ~ g0 r^{-B} + g1 r^B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryData {
    pub g0: [Complex64; 2],
    pub g1: [Complex64; 2],
    pub fit_residual: f64,
    /// Relative disagreement of the two half-window fits.
    pub agreement: f64,
    pub flagged: bool,
    /// `max |g(r)| r^{-B}` over the fit nodes, the size the coefficients are judged against.
    pub data_scale: f64,
}

/// Exponents of the fit basis: the homogeneous series `r^{+-B + k}` and the
/// regular parts `r^n`, `r^{n + 2B}` that sources smooth at the origin produce.
fn basis_exponents(b: f64) -> Vec<f64> {
    vec![-b, b, 1.0 - b, 1.0, 1.0 + b, 1.0 + 2.0 * b, 2.0 - b, 2.0, 2.0 + b]
}

/// Least-squares coefficients of `r^{-B}` and `r^B` for each component, and the relative residual.
fn fit(b: f64, radii: &[f64], data: &[[Complex64; 2]]) -> ([Complex64; 2], [Complex64; 2], f64) {
    let exps = basis_exponents(b);
    let r_hi = radii.iter().copied().fold(0.0, f64::max);
    let a = DMatrix::from_fn(radii.len(), exps.len(), |i, k| (radii[i] / r_hi).powf(exps[k]));
    let svd = a.clone().svd(true, true);
    let mut g0 = [Complex64::default(); 2];
    let mut g1 = [Complex64::default(); 2];
    let (mut res, mut tot) = (0.0, 0.0);
    for p in 0..2 {
        let mut parts = [[0.0; 2]; 2];
        for (part, pick) in [|z: Complex64| z.re, |z: Complex64| z.im].iter().enumerate() {
            let y = DVector::from_iterator(radii.len(), data.iter().map(|v| pick(v[p])));
            let x = svd.solve(&y, 1e-15).unwrap_or_else(|_| DVector::zeros(exps.len()));
            res += (&a * &x - &y).norm_squared();
            tot += y.norm_squared();
            parts[part] = [x[0] * r_hi.powf(b), x[1] * r_hi.powf(-b)];
        }
        g0[p] = Complex64::new(parts[0][0], parts[1][0]);
        g1[p] = Complex64::new(parts[0][1], parts[1][1]);
    }
    let rel = if tot > 0.0 { (res / tot).sqrt() } else { 0.0 };
    (g0, g1, rel)
}

fn spread(a: &([Complex64; 2], [Complex64; 2]), b: &([Complex64; 2], [Complex64; 2])) -> f64 {
    let mut diff: f64 = 0.0;
    let mut size: f64 = 0.0;
    for p in 0..2 {
        diff = diff.max((a.0[p] - b.0[p]).norm()).max((a.1[p] - b.1[p]).norm());
        size = size.max(a.0[p].norm()).max(a.1[p].norm());
    }
    if size == 0.0 {
        0.0
    } else {
        diff / size
    }
}

/// Fits `g0 r^{-B} + g1 r^B` plus higher powers over the grid nodes in `window`.
pub fn extract_boundary_data(c: &Coupling, g: &SpinorFunction, window: (f64, f64)) -> Result<BoundaryData> {
    let (lo, hi) = window;
    if !(lo > 0.0 && lo < hi && hi <= 1e-2) {
        return Err(Error::InvalidRange(format!("fit window [{lo}, {hi}] must satisfy 0 < lo < hi <= 1e-2")));
    }
    let range = g.grid().indices_in(lo, hi);
    let count = range.len();
    if count < 2 * basis_exponents(c.exponent()).len() {
        return Err(Error::UnreliableFit(format!("only {count} grid nodes in [{lo}, {hi}]")));
    }
    let take = FIT_NODES.min(count);
    let picks: Vec<usize> = (0..take).map(|k| range.start + k * (count - 1) / (take - 1)).collect();
    let nodes = g.grid().nodes();
    let radii: Vec<f64> = picks.iter().map(|&i| nodes[i]).collect();
    let data: Vec<[Complex64; 2]> = picks.iter().map(|&i| g.value(i)).collect();
    let b = c.exponent();
    let (g0, g1, fit_residual) = fit(b, &radii, &data);
    if fit_residual > FIT_TOLERANCE {
        return Err(Error::UnreliableFit(format!("relative residual {fit_residual:.2e}")));
    }
    let half = take / 2;
    let low = fit(b, &radii[..half], &data[..half]);
    let high = fit(b, &radii[half..], &data[half..]);
    let agreement = spread(&(low.0, low.1), &(high.0, high.1));
    let flagged = agreement > AGREEMENT_TOLERANCE;
    if flagged {
        log::warn!("boundary fit: half-window disagreement {agreement:.2e}");
    }
    let data_scale = radii
        .iter()
        .zip(&data)
        .map(|(r, v)| (v[0].norm() + v[1].norm()) * r.powf(-b))
        .fold(0.0, f64::max);
    Ok(BoundaryData { g0, g1, fit_residual, agreement, flagged, data_scale })
}

/// Scale-free violation of the boundary condition.
pub fn boundary_residual(spec: &ExtensionSpec, bd: &BoundaryData) -> Result<f64> {
    let (s, r) = (bd.g0[0], bd.g1[0]);
    let size = s.norm() + r.norm();
    if size <= DEGENERATE_TOLERANCE * bd.data_scale || size == 0.0 {
        return Err(Error::DegenerateData);
    }
    Ok(match spec.ratio_target {
        Some(t) => (r - s * t).norm() / size,
        None => s.norm() / size,
    })
}
