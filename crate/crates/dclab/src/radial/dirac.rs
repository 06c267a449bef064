use num_complex::Complex64;

use super::spinor::SpinorFunction;
use crate::homogeneous::Coupling;

/// Nodes at each end that only get one-sided stencils.
pub const EDGE_NODES: usize = 3;
/// Lower-order stencil disagreement above which the grid is reported as coarse.
pub const STENCIL_TOLERANCE: f64 = 1e-3;

/// `(S - E) g` on the grid, with edge nodes flagged.
#[derive(Debug, Clone)]
pub struct DiracApplication {
    pub values: SpinorFunction,
    /// Largest relative disagreement between 7- and 5-point derivatives.
    pub stencil_error: f64,
    pub coarse: bool,
}

impl DiracApplication {
    pub fn interior(&self) -> std::ops::Range<usize> {
        EDGE_NODES..self.values.len().saturating_sub(EDGE_NODES)
    }

    /// `||values - target|| / ||target||` over interior nodes.
    pub fn relative_residual(&self, target: &SpinorFunction) -> f64 {
        let range = self.interior();
        let diff = self.values.sub(target).expect("same grid");
        diff.norm_over(range.clone()) / target.norm_over(range)
    }

    /// Interior nodes lying in `[lo, hi]`.
    pub fn interior_between(&self, lo: f64, hi: f64) -> std::ops::Range<usize> {
        let inner = self.interior();
        let r = self.values.grid().indices_in(lo, hi);
        r.start.max(inner.start)..r.end.min(inner.end)
    }
}

/// Derivative weights at `offsets[at]` for Lagrange interpolation through `offsets`.
fn derivative_weights(offsets: &[f64], at: usize) -> Vec<f64> {
    let x0 = offsets[at];
    (0..offsets.len())
        .map(|j| {
            if j == at {
                offsets
                    .iter()
                    .enumerate()
                    .filter(|&(m, _)| m != at)
                    .map(|(_, &xm)| 1.0 / (x0 - xm))
                    .sum()
            } else {
                let num: f64 = offsets
                    .iter()
                    .enumerate()
                    .filter(|&(m, _)| m != at && m != j)
                    .map(|(_, &xm)| x0 - xm)
                    .product();
                let den: f64 = offsets
                    .iter()
                    .enumerate()
                    .filter(|&(m, _)| m != j)
                    .map(|(_, &xm)| offsets[j] - xm)
                    .product();
                num / den
            }
        })
        .collect()
}

/// Log-radius derivative `r d/dr` by a `width`-point stencil around node `i`.
fn log_derivative(nodes: &[f64], values: &[Complex64], i: usize, width: usize) -> Complex64 {
    let n = nodes.len();
    let half = width / 2;
    let start = i.saturating_sub(half).min(n - width);
    let ri = nodes[i];
    // offsets in ln r, formed from differences to keep them accurate
    let offsets: Vec<f64> = (start..start + width).map(|m| ((nodes[m] - ri) / ri).ln_1p()).collect();
    let w = derivative_weights(&offsets, i - start);
    (start..start + width).zip(&w).map(|(m, &wm)| values[m] * wm).sum()
}

/// Applies `S - E` to a sampled spinor using 7-point stencils in `ln r`.
pub fn apply_dirac(c: &Coupling, energy: f64, g: &SpinorFunction) -> DiracApplication {
    let nodes = g.grid().nodes();
    let n = nodes.len();
    let (nu, kappa) = (c.nu(), f64::from(c.kappa()));
    let mut upper = vec![Complex64::default(); n];
    let mut lower = vec![Complex64::default(); n];
    let mut stencil_error: f64 = 0.0;
    if n < 7 {
        log::warn!("apply_dirac: grid with {n} nodes is too small for 7-point stencils");
        let values = SpinorFunction::zeros(g.grid().clone());
        return DiracApplication { values, stencil_error: f64::INFINITY, coarse: true };
    }
    for i in 0..n {
        let r = nodes[i];
        let [gp, gm] = g.value(i);
        let dp = log_derivative(nodes, g.upper(), i, 7);
        let dm = log_derivative(nodes, g.lower(), i, 7);
        // r (S - E) g, then divide by r
        upper[i] = ((r * (1.0 - energy) + nu) * gp - dm + kappa * gm) / r;
        lower[i] = (dp + kappa * gp + (nu - r * (1.0 + energy)) * gm) / r;
        if (EDGE_NODES..n - EDGE_NODES).contains(&i) {
            let ep = (dp - log_derivative(nodes, g.upper(), i, 5)).norm();
            let em = (dm - log_derivative(nodes, g.lower(), i, 5)).norm();
            let scale = dp.norm() + dm.norm() + gp.norm() + gm.norm();
            if scale > 0.0 {
                stencil_error = stencil_error.max((ep + em) / scale);
            }
        }
    }
    let coarse = stencil_error > STENCIL_TOLERANCE;
    if coarse {
        log::warn!("apply_dirac: stencil error estimate {stencil_error:.2e} exceeds {STENCIL_TOLERANCE:.0e}");
    }
    let values = SpinorFunction::new(g.grid().clone(), upper, lower)
        .unwrap_or_else(|_| SpinorFunction::zeros(g.grid().clone()));
    DiracApplication { values, stencil_error, coarse }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::radial::{GridParams, RadialGrid};

    #[test]
    fn derivative_weights_are_exact_for_polynomials() {
        let x = [-0.3, -0.1, 0.0, 0.05, 0.2, 0.26, 0.4];
        for at in 0..7 {
            let w = derivative_weights(&x, at);
            for deg in 1..7 {
                let d: f64 = x.iter().zip(&w).map(|(&xm, &wm)| wm * xm.powi(deg)).sum();
                let exact = f64::from(deg) * x[at].powi(deg - 1);
                assert!((d - exact).abs() < 1e-10, "at {at}, degree {deg}");
            }
        }
    }

    #[test]
    fn zero_maps_to_zero_and_linearity() {
        let grid = Arc::new(RadialGrid::new(GridParams::default()).unwrap());
        let c = Coupling::critical(0.9, 1).unwrap();
        let zero = SpinorFunction::zeros(grid.clone());
        let out = apply_dirac(&c, 0.2, &zero);
        assert!(out.values.norm() == 0.0);

        let f = SpinorFunction::from_real_fn(grid.clone(), |r| [r * (-r).exp(), r.sqrt() * (-2.0 * r).exp()]);
        let g = SpinorFunction::from_real_fn(grid, |r| [(-r * r).exp() * r, r.powf(0.7) * (-r).exp()]);
        let alpha = Complex64::new(0.7, -1.3);
        let combo = f.scale(alpha).add(&g).unwrap();
        let lhs = apply_dirac(&c, 0.1, &combo).values;
        let rhs = apply_dirac(&c, 0.1, &f).values.scale(alpha).add(&apply_dirac(&c, 0.1, &g).values).unwrap();
        let diff = lhs.sub(&rhs).unwrap().norm_over(3..lhs.len() - 3);
        assert!(diff <= 1e-12 * (f.norm() + g.norm()), "{diff}");
    }

    #[test]
    fn smooth_function_derivative() {
        // S g for g = (r e^{-r}, r e^{-r}) compared with the analytic expression
        let grid = Arc::new(RadialGrid::new(GridParams::default()).unwrap());
        let c = Coupling::new(0.4, 1).unwrap();
        let g = SpinorFunction::from_real_fn(grid.clone(), |r| [r * (-r).exp(), r * (-r).exp()]);
        let exact = SpinorFunction::from_real_fn(grid, |r| {
            let f = r * (-r).exp();
            let df = (1.0 - r) * (-r).exp();
            [(1.0 + 0.4 / r) * f - df + f / r, df + f / r + (-1.0 + 0.4 / r) * f]
        });
        let out = apply_dirac(&c, 0.0, &g);
        assert!(out.relative_residual(&exact) < 1e-9);
        assert!(!out.coarse);
    }
}
