use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use super::gauss::{gauss_legendre, partial_integration_matrices};
use crate::error::{Error, Result};

/// Construction parameters of a [`RadialGrid`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridParams {
    pub r_min: f64,
    pub r_max: f64,
    pub panels: usize,
    pub order: usize,
}

impl Default for GridParams {
    fn default() -> Self {
        Self { r_min: 1e-8, r_max: 40.0, panels: 400, order: 8 }
    }
}

/// Composite Gauss-Legendre grid on geometrically growing panels of `[r_min, r_max]`.
#[derive(Debug, Clone)]
pub struct RadialGrid {
    params: GridParams,
    edges: Vec<f64>,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    left: Vec<Vec<f64>>,
    right: Vec<Vec<f64>>,
}

/// Builds the grid; panel endpoints have a constant ratio.
pub fn make_grid(r_min: f64, r_max: f64, panels: usize, order: usize) -> Result<RadialGrid> {
    RadialGrid::new(GridParams { r_min, r_max, panels, order })
}

impl RadialGrid {
    pub fn new(params: GridParams) -> Result<Self> {
        let GridParams { r_min, r_max, panels, order } = params;
        if !(r_min > 0.0 && r_min < r_max && r_max.is_finite()) {
            return Err(Error::InvalidRange(format!("need 0 < r_min < r_max, got [{r_min}, {r_max}]")));
        }
        if r_min < 1e-10 {
            return Err(Error::InvalidRange(format!("r_min = {r_min} is below 1e-10")));
        }
        if panels == 0 || !(2..=20).contains(&order) {
            return Err(Error::InvalidRange(format!("panels = {panels}, order = {order}")));
        }
        let ratio = (r_max / r_min).ln() / panels as f64;
        let mut edges: Vec<f64> = (0..=panels).map(|k| r_min * (ratio * k as f64).exp()).collect();
        edges[0] = r_min;
        edges[panels] = r_max;
        let (t, w) = gauss_legendre(order);
        let (left, right) = partial_integration_matrices(&t, &w);
        let mut nodes = Vec::with_capacity(panels * order);
        let mut weights = Vec::with_capacity(panels * order);
        for k in 0..panels {
            let (lo, hi) = (edges[k], edges[k + 1]);
            let half = 0.5 * (hi - lo);
            for (ti, wi) in t.iter().zip(&w) {
                nodes.push(lo + half * (1.0 + ti));
                weights.push(half * wi);
            }
        }
        Ok(Self { params, edges, nodes, weights, left, right })
    }

    pub fn params(&self) -> GridParams {
        self.params
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn r_min(&self) -> f64 {
        self.params.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.params.r_max
    }

    pub fn panel_edges(&self) -> &[f64] {
        &self.edges
    }

    /// Indices of the nodes inside `[lo, hi]`.
    pub fn indices_in(&self, lo: f64, hi: f64) -> std::ops::Range<usize> {
        let start = self.nodes.partition_point(|&r| r < lo);
        let end = self.nodes.partition_point(|&r| r <= hi);
        start..end.max(start)
    }

    pub fn integrate<T>(&self, values: &[T]) -> T
    where
        T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
    {
        values.iter().zip(&self.weights).fold(T::default(), |acc, (&v, &w)| acc + v * w)
    }

    /// `int_{r_min}^{r_i} f` at every node, exact for the per-panel interpolant.
    pub fn cumulative_from_left<T>(&self, values: &[T]) -> Vec<T>
    where
        T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
    {
        let n = self.params.order;
        let mut out = vec![T::default(); values.len()];
        let mut before = T::default();
        for k in 0..self.params.panels {
            let half = 0.5 * (self.edges[k + 1] - self.edges[k]);
            let block = &values[k * n..(k + 1) * n];
            for j in 0..n {
                let partial = block.iter().zip(&self.left[j]).fold(T::default(), |acc, (&v, &q)| acc + v * q);
                out[k * n + j] = before + partial * half;
            }
            let total = block
                .iter()
                .zip(&self.weights[k * n..(k + 1) * n])
                .fold(T::default(), |acc, (&v, &w)| acc + v * w);
            before = before + total;
        }
        out
    }

    /// `int_{r_i}^{r_max} f` at every node, accumulated from the outer end.
    pub fn cumulative_from_right<T>(&self, values: &[T]) -> Vec<T>
    where
        T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
    {
        let n = self.params.order;
        let mut out = vec![T::default(); values.len()];
        let mut after = T::default();
        for k in (0..self.params.panels).rev() {
            let half = 0.5 * (self.edges[k + 1] - self.edges[k]);
            let block = &values[k * n..(k + 1) * n];
            for j in 0..n {
                let partial = block.iter().zip(&self.right[j]).fold(T::default(), |acc, (&v, &q)| acc + v * q);
                out[k * n + j] = after + partial * half;
            }
            let total = block
                .iter()
                .zip(&self.weights[k * n..(k + 1) * n])
                .fold(T::default(), |acc, (&v, &w)| acc + v * w);
            after = after + total;
        }
        out
    }
}

impl PartialEq for RadialGrid {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params
    }
}
