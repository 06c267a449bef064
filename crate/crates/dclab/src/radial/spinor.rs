use std::sync::Arc;

use num_complex::Complex64;

use super::grid::RadialGrid;
use crate::error::{Error, Result};

/// Two-component complex function sampled on a [`RadialGrid`].
#[derive(Debug, Clone)]
pub struct SpinorFunction {
    grid: Arc<RadialGrid>,
    upper: Vec<Complex64>,
    lower: Vec<Complex64>,
}

impl SpinorFunction {
    pub fn new(grid: Arc<RadialGrid>, upper: Vec<Complex64>, lower: Vec<Complex64>) -> Result<Self> {
        if upper.len() != grid.len() || lower.len() != grid.len() {
            return Err(Error::InvalidParams(format!(
                "spinor has {} / {} values on a grid of {} nodes",
                upper.len(),
                lower.len(),
                grid.len()
            )));
        }
        if upper.iter().chain(&lower).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParams("spinor has non-finite entries".into()));
        }
        Ok(Self { grid, upper, lower })
    }

    pub fn zeros(grid: Arc<RadialGrid>) -> Self {
        let n = grid.len();
        Self { grid, upper: vec![Complex64::default(); n], lower: vec![Complex64::default(); n] }
    }

    pub fn from_fn(grid: Arc<RadialGrid>, mut f: impl FnMut(f64) -> [Complex64; 2]) -> Self {
        let (upper, lower) = grid.nodes().iter().map(|&r| f(r)).map(|[u, l]| (u, l)).unzip();
        Self { grid, upper, lower }
    }

    pub fn from_real_fn(grid: Arc<RadialGrid>, mut f: impl FnMut(f64) -> [f64; 2]) -> Self {
        Self::from_fn(grid, |r| {
            let [u, l] = f(r);
            [Complex64::new(u, 0.0), Complex64::new(l, 0.0)]
        })
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn upper(&self) -> &[Complex64] {
        &self.upper
    }

    pub fn lower(&self) -> &[Complex64] {
        &self.lower
    }

    pub fn value(&self, i: usize) -> [Complex64; 2] {
        [self.upper[i], self.lower[i]]
    }

    pub fn len(&self) -> usize {
        self.upper.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_empty()
    }

    fn check_grid(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.grid, &other.grid) || *self.grid == *other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        inner_product(self, other)
    }

    pub fn norm(&self) -> f64 {
        self.norm_over(0..self.len())
    }

    /// L2 norm restricted to the given node indices.
    pub fn norm_over(&self, range: std::ops::Range<usize>) -> f64 {
        let w = self.grid.weights();
        range
            .map(|i| w[i] * (self.upper[i].norm_sqr() + self.lower[i].norm_sqr()))
            .sum::<f64>()
            .sqrt()
    }

    /// L2 norm over the nodes in `[lo, hi]`.
    pub fn norm_between(&self, lo: f64, hi: f64) -> f64 {
        self.norm_over(self.grid.indices_in(lo, hi))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        self.map(|[u, l], _| [u * factor, l * factor])
    }

    /// `self + factor * other`.
    pub fn axpy(&self, factor: Complex64, other: &Self) -> Result<Self> {
        self.check_grid(other)?;
        let mut out = self.clone();
        for i in 0..out.len() {
            out.upper[i] += factor * other.upper[i];
            out.lower[i] += factor * other.lower[i];
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.axpy(Complex64::new(1.0, 0.0), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(Complex64::new(-1.0, 0.0), other)
    }

    /// Applies `f(value, r)` node by node.
    pub fn map(&self, f: impl Fn([Complex64; 2], f64) -> [Complex64; 2]) -> Self {
        let mut out = self.clone();
        for (i, &r) in self.grid.nodes().iter().enumerate() {
            let [u, l] = f(self.value(i), r);
            out.upper[i] = u;
            out.lower[i] = l;
        }
        out
    }
}

/// `sum_i w_i (conj(f+) g+ + conj(f-) g-)`.
pub fn inner_product(f: &SpinorFunction, g: &SpinorFunction) -> Result<Complex64> {
    f.check_grid(g)?;
    let w = f.grid.weights();
    Ok((0..f.len()).fold(Complex64::default(), |acc, i| {
        acc + (f.upper[i].conj() * g.upper[i] + f.lower[i].conj() * g.lower[i]) * w[i]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::grid::GridParams;

    fn grid() -> Arc<RadialGrid> {
        Arc::new(RadialGrid::new(GridParams::default()).unwrap())
    }

    #[test]
    fn exponential_inner_products() {
        let g = grid();
        let up = SpinorFunction::from_real_fn(g.clone(), |r| [(-r).exp(), 0.0]);
        let lo = SpinorFunction::from_real_fn(g.clone(), |r| [0.0, (-r).exp()]);
        // the grid starts at r_min, so compare with the integral over [r_min, r_max]
        let exact = 0.5 * ((-2e-8f64).exp() - (-80f64).exp());
        assert!((up.inner_product(&up).unwrap().re - exact).abs() < 1e-10);
        assert_eq!(up.inner_product(&lo).unwrap(), Complex64::default());
    }

    #[test]
    fn conjugate_symmetry() {
        let g = grid();
        let f = SpinorFunction::from_fn(g.clone(), |r| {
            [Complex64::new(r.sin(), r.cos()) * (-r).exp(), Complex64::new(0.3, -r) * (-2.0 * r).exp()]
        });
        let h = SpinorFunction::from_fn(g, |r| {
            [Complex64::new(1.0, r) * (-r).exp(), Complex64::new(-r, 2.0) * (-r * 0.5).exp()]
        });
        let a = f.inner_product(&h).unwrap();
        let b = h.inner_product(&f).unwrap();
        assert!((a - b.conj()).norm() < 1e-14);
    }

    #[test]
    fn grid_mismatch_and_shape_errors() {
        let a = SpinorFunction::zeros(grid());
        let other = Arc::new(RadialGrid::new(GridParams { panels: 10, ..GridParams::default() }).unwrap());
        let b = SpinorFunction::zeros(other.clone());
        assert!(matches!(a.inner_product(&b), Err(Error::GridMismatch)));
        assert!(SpinorFunction::new(other.clone(), vec![], vec![]).is_err());
        let n = other.len();
        let bad = vec![Complex64::new(f64::NAN, 0.0); n];
        assert!(SpinorFunction::new(other, bad.clone(), bad).is_err());
    }
}
