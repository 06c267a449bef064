//! The distinguished extension through its inverse, built from the fundamental system.

mod norm;

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::Result;
use crate::homogeneous::{build_fundamental_system, Coupling, FundamentalSystem};
use crate::radial::{RadialGrid, SpinorFunction};

pub use norm::{estimate_sd_inverse_norm, NormEstimate, DEFAULT_SEED};

/// Kernel of the inverse at `(r, rho)`.
///
/// The variation-of-constants kernel `v_inf(r) v0(rho)^T / W` (and its mirror)
/// solves `S f = -g`, so the inverse carries an overall minus sign.
pub fn green_kernel(c: &Coupling, r: f64, rho: f64) -> Result<[[f64; 2]; 2]> {
    kernel_from(&build_fundamental_system(c)?, r, rho)
}

pub(crate) fn kernel_from(fs: &FundamentalSystem, r: f64, rho: f64) -> Result<[[f64; 2]; 2]> {
    let (col, row) = if rho < r { (fs.v_inf(r)?, fs.v0(rho)?) } else { (fs.v0(r)?, fs.v_inf(rho)?) };
    let s = -1.0 / fs.w0_inf();
    Ok([[s * col[0] * row[0], s * col[0] * row[1]], [s * col[1] * row[0], s * col[1] * row[1]]])
}

/// `S_D^{-1}` on a fixed grid, with both fundamental solutions tabulated.
#[derive(Debug, Clone)]
pub struct GreenOperator {
    system: FundamentalSystem,
    grid: Arc<RadialGrid>,
    v0: Vec<[f64; 2]>,
    v_inf: Vec<[f64; 2]>,
    vinf_norm_sq: f64,
}

impl GreenOperator {
    pub fn new(c: &Coupling, grid: Arc<RadialGrid>) -> Result<Self> {
        let system = build_fundamental_system(c)?;
        let v0 = grid.nodes().iter().map(|&r| system.v0(r)).collect::<Result<Vec<_>>>()?;
        let v_inf = grid.nodes().iter().map(|&r| system.v_inf(r)).collect::<Result<Vec<_>>>()?;
        let density: Vec<f64> = v_inf.iter().map(|v| v[0] * v[0] + v[1] * v[1]).collect();
        let lead = system.singular_lead();
        let q = system.q();
        let b = system.exponent();
        let r0 = grid.r_min();
        let below = (lead[0] * lead[0] + lead[1] * lead[1]) * r0.powf(1.0 - 2.0 * b) / (1.0 - 2.0 * b)
            + 2.0 * (lead[0] * q[0] + lead[1] * q[1]) * r0;
        let vinf_norm_sq = grid.integrate(&density) + below;
        Ok(Self { system, grid, v0, v_inf, vinf_norm_sq })
    }

    pub fn system(&self) -> &FundamentalSystem {
        &self.system
    }

    pub fn coupling(&self) -> &Coupling {
        self.system.coupling()
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    /// `Phi = v_inf` sampled on the grid.
    pub fn phi(&self) -> SpinorFunction {
        let (u, l) = self.v_inf.iter().map(|v| (Complex64::from(v[0]), Complex64::from(v[1]))).unzip();
        SpinorFunction::new(self.grid.clone(), u, l).expect("grid-sized")
    }

    pub fn v0_on_grid(&self) -> &[[f64; 2]] {
        &self.v0
    }

    pub fn v_inf_on_grid(&self) -> &[[f64; 2]] {
        &self.v_inf
    }

    pub fn kernel(&self, r: f64, rho: f64) -> Result<[[f64; 2]; 2]> {
        kernel_from(&self.system, r, rho)
    }

    /// `||v_inf||^2`, with the part below `r_min` taken from the short-distance form.
    pub fn vinf_norm_sq(&self) -> f64 {
        self.vinf_norm_sq
    }

    /// Short-distance coefficients of `S_D^{-1} Phi ~ (p+, p-) r^B`.
    pub fn p_pm(&self) -> (f64, f64) {
        let s = -self.vinf_norm_sq / self.system.w0_inf();
        (s * self.system.q_plus(), s * self.system.q_minus())
    }

    /// `-(Theta_inf v0 + Theta_0 v_inf)` with `Theta_inf = int_r^inf v_inf.g / W` and
    /// `Theta_0 = int_0^r v0.g / W`.
    pub fn apply(&self, g: &SpinorFunction) -> Result<SpinorFunction> {
        if g.grid().params() != self.grid.params() {
            return Err(crate::Error::GridMismatch);
        }
        let (outer, inner) = self.thetas(g);
        let w = self.system.w0_inf();
        let mut up = Vec::with_capacity(g.len());
        let mut lo = Vec::with_capacity(g.len());
        for i in 0..g.len() {
            let (a, b) = (outer[i] / w, inner[i] / w);
            up.push(-(a * self.v0[i][0] + b * self.v_inf[i][0]));
            lo.push(-(a * self.v0[i][1] + b * self.v_inf[i][1]));
        }
        SpinorFunction::new(self.grid.clone(), up, lo)
    }

    /// `<Phi, g>` over `(0, r_max)`, including the part below the grid.
    pub fn phi_pairing(&self, g: &SpinorFunction) -> Result<Complex64> {
        if g.grid().params() != self.grid.params() {
            return Err(crate::Error::GridMismatch);
        }
        let (up, lo) = (g.upper(), g.lower());
        // v_inf is real, so conjugation leaves it unchanged
        let with_inf: Vec<Complex64> = (0..g.len()).map(|i| up[i] * self.v_inf[i][0] + lo[i] * self.v_inf[i][1]).collect();
        let total = integral_from_origin(&self.grid, self.system.exponent(), &with_inf);
        Ok(total.last().copied().unwrap_or_default())
    }

    /// Unnormalised `(int_r^inf v_inf.g, int_0^r v0.g)` at every node.
    pub fn thetas(&self, g: &SpinorFunction) -> (Vec<Complex64>, Vec<Complex64>) {
        let (up, lo) = (g.upper(), g.lower());
        let with_inf: Vec<Complex64> = (0..g.len()).map(|i| up[i] * self.v_inf[i][0] + lo[i] * self.v_inf[i][1]).collect();
        let with_0: Vec<Complex64> = (0..g.len()).map(|i| up[i] * self.v0[i][0] + lo[i] * self.v0[i][1]).collect();
        let outer = self.grid.cumulative_from_right(&with_inf);
        let inner = integral_from_origin(&self.grid, self.system.exponent(), &with_0);
        (outer, inner)
    }
}

/// Span of the fit that supplies the part of an integral below the grid.
const TAIL_FIT_DECADES: f64 = 2.0;
const TAIL_FIT_NODES: usize = 60;

/// `int_0^{r_i} F` at every node.
///
/// The first panel is skipped since stencil-derived integrands are least accurate
/// there; below the second panel `F` is replaced by a least-squares fit on the
/// powers `r^{kB + l}` that products of short-distance expansions produce.
pub(crate) fn integral_from_origin(grid: &RadialGrid, exponent: f64, values: &[Complex64]) -> Vec<Complex64> {
    let nodes = grid.nodes();
    let anchor = grid.params().order.min(nodes.len().saturating_sub(1));
    let cum = grid.cumulative_from_left(values);
    let base = cum[anchor];
    let below = origin_tail(nodes, values, anchor, exponent);
    cum.into_iter().map(|v| v - base + below).collect()
}

fn origin_tail(nodes: &[f64], values: &[Complex64], anchor: usize, b: f64) -> Complex64 {
    let r0 = nodes[anchor];
    let end = nodes.partition_point(|&r| r <= r0 * 10f64.powf(TAIL_FIT_DECADES));
    let exps = [-2.0 * b, -b, 0.0, b, 2.0 * b, 1.0 - 2.0 * b, 1.0 - b, 1.0, 1.0 + b];
    let count = end.saturating_sub(anchor);
    if count < 2 * exps.len() {
        return values[anchor] * r0;
    }
    let take = TAIL_FIT_NODES.min(count);
    let picks: Vec<usize> = (0..take).map(|k| anchor + k * (count - 1) / (take - 1)).collect();
    let a = DMatrix::from_fn(take, exps.len(), |i, k| (nodes[picks[i]] / r0).powf(exps[k]));
    let svd = a.svd(true, true);
    // each basis function integrates to r0 / (e + 1) on (0, r0) in these units
    let weights: Vec<f64> = exps.iter().map(|e| r0 / (e + 1.0)).collect();
    let part = |pick: fn(Complex64) -> f64| -> f64 {
        let y = DVector::from_iterator(take, picks.iter().map(|&i| pick(values[i])));
        match svd.solve(&y, 1e-14) {
            Ok(x) => x.iter().zip(&weights).map(|(c, w)| c * w).sum(),
            Err(_) => pick(values[anchor]) * r0,
        }
    };
    Complex64::new(part(|z| z.re), part(|z| z.im))
}

/// Free-function form of [`GreenOperator::apply`].
pub fn apply_sd_inverse(op: &GreenOperator, g: &SpinorFunction) -> Result<SpinorFunction> {
    op.apply(g)
}

/// Free-function form of [`GreenOperator::vinf_norm_sq`].
pub fn vinf_norm_sq(op: &GreenOperator) -> f64 {
    op.vinf_norm_sq()
}

/// Free-function form of [`GreenOperator::p_pm`].
pub fn p_pm(op: &GreenOperator) -> (f64, f64) {
    op.p_pm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{apply_dirac, make_grid, GridParams};

    fn operator(nu: f64, kappa: i32) -> GreenOperator {
        let grid = Arc::new(RadialGrid::new(GridParams::default()).unwrap());
        GreenOperator::new(&Coupling::critical(nu, kappa).unwrap(), grid).unwrap()
    }

    #[test]
    fn kernel_is_transpose_symmetric() {
        let c = Coupling::critical(0.9, 1).unwrap();
        let a = green_kernel(&c, 0.3, 1.7).unwrap();
        let b = green_kernel(&c, 1.7, 0.3).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((a[i][j] - b[j][i]).abs() <= 1e-15 * a[i][j].abs().max(1.0));
                assert!(a[i][j].is_finite());
            }
        }
    }

    #[test]
    fn inverse_solves_the_equation() {
        let op = operator(0.9, 1);
        let g = SpinorFunction::from_real_fn(op.grid().clone(), |r| [r * (-r).exp(), (1.0 - r) * (-0.5 * r * r).exp()]);
        let f = op.apply(&g).unwrap();
        let back = apply_dirac(op.coupling(), 0.0, &f);
        let range = back.interior_between(1e-6, 30.0);
        let diff = back.values.sub(&g).unwrap();
        let res = diff.norm_over(range.clone()) / g.norm_over(range);
        assert!(res < 1e-6, "residual {res}");
    }

    #[test]
    fn zero_maps_to_zero() {
        let op = operator(0.9, 1);
        let f = op.apply(&SpinorFunction::zeros(op.grid().clone())).unwrap();
        assert_eq!(f.norm(), 0.0);
    }

    #[test]
    fn norm_is_stable_under_truncation_and_refinement() {
        let c = Coupling::critical(0.9, 1).unwrap();
        let base = operator(0.9, 1).vinf_norm_sq();
        let wide = GreenOperator::new(&c, Arc::new(make_grid(1e-8, 80.0, 480, 8).unwrap())).unwrap();
        assert!(((wide.vinf_norm_sq() - base) / base).abs() < 1e-12);
        let fine = GreenOperator::new(&c, Arc::new(make_grid(1e-8, 40.0, 800, 10).unwrap())).unwrap();
        assert!(((fine.vinf_norm_sq() - base) / base).abs() < 1e-9);
        let deeper = GreenOperator::new(&c, Arc::new(make_grid(1e-10, 40.0, 480, 8).unwrap())).unwrap();
        assert!(((deeper.vinf_norm_sq() - base) / base).abs() < 1e-8);
    }

    #[test]
    fn p_ratio_matches_q_ratio() {
        let op = operator(0.92, 1);
        let (pp, pm) = op.p_pm();
        let q = op.system().q();
        assert!((pp / pm - q[0] / q[1]).abs() < 1e-14);
    }

    #[test]
    fn inverse_is_symmetric() {
        let op = operator(0.9, -1);
        let f = SpinorFunction::from_real_fn(op.grid().clone(), |r| [(-r).exp(), r / (1.0 + r * r)]);
        let g = SpinorFunction::from_real_fn(op.grid().clone(), |r| [r.sin() * (-0.3 * r).exp(), (-r * r).exp()]);
        let a = f.inner_product(&op.apply(&g).unwrap()).unwrap();
        let b = op.apply(&f).unwrap().inner_product(&g).unwrap();
        assert!((a - b).norm() < 1e-9 * a.norm());
    }

    #[test]
    fn origin_integral_of_mixed_powers() {
        let grid = RadialGrid::new(GridParams::default()).unwrap();
        let b: f64 = 0.43;
        let f = |r: f64| 0.7 * r.powf(-2.0 * b) + 3.0 + 2.0 * r.powf(b);
        let vals: Vec<Complex64> = grid.nodes().iter().map(|&r| Complex64::new(f(r), -f(r))).collect();
        let got = integral_from_origin(&grid, b, &vals);
        let exact = |r: f64| 0.7 * r.powf(1.0 - 2.0 * b) / (1.0 - 2.0 * b) + 3.0 * r + 2.0 * r.powf(1.0 + b) / (1.0 + b);
        for i in [0, 100, 1000, 3000] {
            let r = grid.nodes()[i];
            assert!((got[i].re - exact(r)).abs() < 1e-11 * exact(r), "{i}");
            assert!((got[i].im + exact(r)).abs() < 1e-11 * exact(r));
        }
    }
}
