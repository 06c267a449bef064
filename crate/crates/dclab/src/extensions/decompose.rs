use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::boundary::{extract_boundary_data, Beta, BoundaryData, DEFAULT_WINDOW, FIT_NODES};
use crate::error::{Error, Result};
use crate::greenop::{integral_from_origin, GreenOperator};
use crate::radial::{RadialGrid, SpinorFunction};

/// Largest tolerated relative disagreement of the half-window limits.
pub const LIMIT_TOLERANCE: f64 = 1e-6;
/// Default threshold for closure membership.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-6;

/// `g = (a0 + b_inf) v0 + (a_inf + b0) v_inf` with `b0`, `b_inf` vanishing at the origin.
#[derive(Debug, Clone)]
pub struct AdjointDecomposition {
    pub a0: Complex64,
    pub a_inf: Complex64,
    /// `b0(r) = -(1/W) int_0^r v0.Sg` at the grid nodes.
    pub b0: Vec<Complex64>,
    /// `b_inf(r) = (1/W) int_0^r v_inf.Sg` at the grid nodes.
    pub b_inf: Vec<Complex64>,
    /// Relative disagreement of the half-window Wronskian limits.
    pub spread: f64,
    /// Relative gap between the exact b-functions and their quadrature form.
    pub quadrature_mismatch: f64,
    pub grid: Arc<RadialGrid>,
}

impl AdjointDecomposition {
    /// `(a0 + b_inf) v0 + (a_inf + b0) v_inf` on the grid.
    pub fn reconstruct(&self, op: &GreenOperator) -> SpinorFunction {
        let (v0, vi) = (op.v0_on_grid(), op.v_inf_on_grid());
        let n = self.b0.len();
        let (mut up, mut lo) = (Vec::with_capacity(n), Vec::with_capacity(n));
        for i in 0..n {
            let (x, y) = (self.a0 + self.b_inf[i], self.a_inf + self.b0[i]);
            up.push(x * v0[i][0] + y * vi[i][0]);
            lo.push(x * v0[i][1] + y * vi[i][1]);
        }
        SpinorFunction::new(self.grid.clone(), up, lo).expect("grid-sized")
    }

    /// Short-distance coefficients implied by `a0`, `a_inf`.
    pub fn boundary_data(&self, op: &GreenOperator) -> BoundaryData {
        let fs = op.system();
        let (lead, q) = (fs.singular_lead(), fs.q());
        let s = self.a0 + self.a_inf;
        BoundaryData {
            g0: [self.a_inf * lead[0], self.a_inf * lead[1]],
            g1: [s * q[0], s * q[1]],
            fit_residual: 0.0,
            agreement: self.spread,
            flagged: false,
            data_scale: (self.a0.norm() + self.a_inf.norm()) * (lead[0].abs() + q[0].abs()),
        }
    }
}

fn real_dot(v: &[f64; 2], g: [Complex64; 2]) -> Complex64 {
    g[0] * v[0] + g[1] * v[1]
}

/// Exponents of `W_r(v, g) - lim W` for `g` in the adjoint domain.
fn wronskian_exponents(b: f64) -> [f64; 11] {
    [0.0, 1.0 - 2.0 * b, 1.0 - b, 1.0, 1.0 + b, 1.0 + 2.0 * b, 1.0 + 3.0 * b, 2.0 - 2.0 * b, 2.0 - b, 2.0, 2.0 + b]
}

/// Constant term of a least-squares fit on `r^e`, for real and imaginary parts.
fn constant_term(radii: &[f64], values: &[Complex64], exps: &[f64]) -> Complex64 {
    let top = radii.iter().copied().fold(0.0, f64::max);
    let a = DMatrix::from_fn(radii.len(), exps.len(), |i, k| (radii[i] / top).powf(exps[k]));
    let svd = a.svd(true, true);
    let part = |pick: fn(&Complex64) -> f64| -> f64 {
        let y = DVector::from_iterator(radii.len(), values.iter().map(pick));
        svd.solve(&y, 1e-15).map(|x| x[0]).unwrap_or(f64::NAN)
    };
    Complex64::new(part(|z| z.re), part(|z| z.im))
}

/// `lim_{r -> 0} W_r` from samples over a window, with the disagreement of the two half windows.
fn wronskian_limit(radii: &[f64], values: &[Complex64], b: f64) -> (Complex64, f64) {
    let exps = wronskian_exponents(b);
    let full = constant_term(radii, values, &exps);
    let half = radii.len() / 2;
    let low = constant_term(&radii[..half], &values[..half], &exps);
    let high = constant_term(&radii[half..], &values[half..], &exps);
    (full, (low - full).norm().max((high - full).norm()))
}

/// Splits `g` along the fundamental system.
///
/// `a0`, `a_inf` are the extrapolated Wronskian limits over [`DEFAULT_WINDOW`]; the
/// b-functions then follow exactly from `W_r(v0, g)`, `W_r(v_inf, g)`. `sg = S g` feeds
/// the cumulative-quadrature form of the b-functions, reported as a cross-check.
pub fn decompose_adjoint(op: &GreenOperator, g: &SpinorFunction, sg: &SpinorFunction) -> Result<AdjointDecomposition> {
    let grid = op.grid().clone();
    if g.grid().params() != grid.params() || sg.grid().params() != grid.params() {
        return Err(Error::GridMismatch);
    }
    let w = op.system().w0_inf();
    let b = op.system().exponent();
    let (v0, vi) = (op.v0_on_grid(), op.v_inf_on_grid());
    let n = g.len();
    let wr = |v: &[f64; 2], i: usize| {
        let x = g.value(i);
        (x[1] * v[0] - x[0] * v[1]) / w
    };
    let w0: Vec<Complex64> = (0..n).map(|i| wr(&v0[i], i)).collect();
    let wi: Vec<Complex64> = (0..n).map(|i| wr(&vi[i], i)).collect();

    let (lo, hi) = DEFAULT_WINDOW;
    let range = grid.indices_in(lo, hi);
    let count = range.len();
    if count < 2 * wronskian_exponents(b).len() {
        return Err(Error::InvalidRange(format!("only {count} grid nodes in [{lo}, {hi}]")));
    }
    let take = FIT_NODES.min(count);
    let picks: Vec<usize> = (0..take).map(|k| range.start + k * (count - 1) / (take - 1)).collect();
    let radii: Vec<f64> = picks.iter().map(|&i| grid.nodes()[i]).collect();
    let sample = |vals: &[Complex64]| picks.iter().map(|&i| vals[i]).collect::<Vec<_>>();
    let (lim0, d0) = wronskian_limit(&radii, &sample(&w0), b);
    let (limi, di) = wronskian_limit(&radii, &sample(&wi), b);
    let (a0, a_inf) = (-limi, lim0);
    let scale = picks.iter().map(|&i| w0[i].norm() + wi[i].norm()).fold(0.0, f64::max);
    let spread = d0.max(di) / scale.max(f64::MIN_POSITIVE);
    if spread.is_nan() || spread > LIMIT_TOLERANCE {
        return Err(Error::NonConvergentLimit(format!("Wronskian limits vary by {spread:.2e} across the window")));
    }
    let b0: Vec<Complex64> = w0.iter().map(|x| x - a_inf).collect();
    let b_inf: Vec<Complex64> = wi.iter().map(|x| -x - a0).collect();

    let dot = |v: &[f64; 2], i: usize| {
        let x = sg.value(i);
        x[0] * v[0] + x[1] * v[1]
    };
    let q0: Vec<Complex64> = (0..n).map(|i| -dot(&v0[i], i) / w).collect();
    let qi: Vec<Complex64> = (0..n).map(|i| dot(&vi[i], i) / w).collect();
    let q0 = integral_from_origin(&grid, b, &q0);
    let qi = integral_from_origin(&grid, b, &qi);
    let probe = grid.indices_in(lo, hi);
    let quadrature_mismatch = probe
        .map(|i| (q0[i] - b0[i]).norm().max((qi[i] - b_inf[i]).norm()))
        .fold(0.0, f64::max)
        / (a0.norm() + a_inf.norm() + scale).max(f64::MIN_POSITIVE);
    Ok(AdjointDecomposition { a0, a_inf, b0, b_inf, spread, quadrature_mismatch, grid })
}

/// Whether `g` lies in the closure of the minimal operator, i.e. `a0 = a_inf = 0`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MembershipCertificate {
    pub member: bool,
    pub a0_abs: f64,
    pub a_inf_abs: f64,
    pub tolerance: f64,
}

pub fn closure_membership(dec: &AdjointDecomposition, tol: f64) -> MembershipCertificate {
    let (a0_abs, a_inf_abs) = (dec.a0.norm(), dec.a_inf.norm());
    MembershipCertificate { member: a0_abs <= tol && a_inf_abs <= tol, a0_abs, a_inf_abs, tolerance: tol }
}

/// Coefficient of `Phi` in `g`, computed from the short-distance limit and from `<Phi, S g>`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SingularCoefficient {
    pub limit: Complex64,
    pub integral: Complex64,
    pub disagreement: f64,
}

/// Largest accepted relative disagreement between the two routes.
pub const ROUTE_TOLERANCE: f64 = 1e-3;

pub fn singular_coefficient(
    op: &GreenOperator,
    g: &SpinorFunction,
    beta: f64,
    sg: &SpinorFunction,
) -> Result<SingularCoefficient> {
    if beta == 0.0 || !beta.is_finite() {
        return Err(Error::InvalidParams(format!("beta = {beta} must be finite and non-zero")));
    }
    let bd = extract_boundary_data(op.coupling(), g, DEFAULT_WINDOW)?;
    let limit = bd.g0[0] / op.system().gamma_plus();
    let density: Vec<Complex64> = (0..g.len()).map(|i| real_dot(&op.v_inf_on_grid()[i], sg.value(i))).collect();
    let pairing = *integral_from_origin(op.grid(), op.system().exponent(), &density).last().unwrap_or(&Complex64::default());
    let integral = pairing / (beta * op.vinf_norm_sq());
    let size = limit.norm().max(integral.norm());
    let disagreement = if size == 0.0 { 0.0 } else { (limit - integral).norm() / size };
    let scale = bd.data_scale / op.system().gamma_plus().abs();
    if disagreement > ROUTE_TOLERANCE && size > 1e-7 * scale {
        return Err(Error::RouteDisagreement(format!("limit {limit} vs integral {integral}")));
    }
    Ok(SingularCoefficient { limit, integral, disagreement })
}

/// `(g_reg, g_sing)` with `g_sing = a_inf Phi` and `g_reg = g - g_sing`.
pub fn regular_singular_split(
    op: &GreenOperator,
    g: &SpinorFunction,
    dec: &AdjointDecomposition,
) -> Result<(SpinorFunction, SpinorFunction)> {
    let sing = op.phi().scale(dec.a_inf);
    Ok((g.sub(&sing)?, sing))
}

/// The boundary condition in terms of the split parts:
/// `(gamma / p+) lim r^{-B} g_reg+ = beta lim r^B g_sing+`, returned as a scale-free residual.
pub fn split_condition_residual(op: &GreenOperator, dec: &AdjointDecomposition, beta: Beta) -> f64 {
    let fs = op.system();
    let (p_plus, _) = op.p_pm();
    // the r^B coefficient of a_inf Phi belongs to g_sing, so g_reg keeps only a0 q+
    let reg = dec.a0 * fs.q_plus();
    let sing = dec.a_inf * fs.gamma_plus();
    let lhs = reg * (fs.gamma_plus() / p_plus);
    match beta {
        Beta::Finite(b) => (lhs - sing * b).norm() / (lhs.norm() + (sing * b).norm()).max(f64::MIN_POSITIVE),
        Beta::Infinite => sing.norm() / (lhs.norm() + sing.norm()).max(f64::MIN_POSITIVE),
    }
}
