//! Gauss-Legendre rules on `[-1, 1]` and their partial-interval integration weights.

use std::f64::consts::PI;

/// Nodes and weights of the `n`-point Gauss-Legendre rule, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    (p1, n * (x * p1 - p0) / (x * x - 1.0))
}

fn lagrange(nodes: &[f64], k: usize, t: f64) -> f64 {
    nodes
        .iter()
        .enumerate()
        .filter(|&(m, _)| m != k)
        .map(|(_, &tm)| (t - tm) / (nodes[k] - tm))
        .product()
}

/// `left[j][k] = int_{-1}^{t_j} l_k` and `right[j][k] = int_{t_j}^{1} l_k`,
/// with `l_k` the Lagrange basis on the Gauss nodes.
pub fn partial_integration_matrices(nodes: &[f64], weights: &[f64]) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let n = nodes.len();
    let integrate = |lo: f64, hi: f64, k: usize| -> f64 {
        let half = 0.5 * (hi - lo);
        nodes
            .iter()
            .zip(weights)
            .map(|(&t, &w)| w * lagrange(nodes, k, lo + half * (1.0 + t)))
            .sum::<f64>()
            * half
    };
    let left = (0..n).map(|j| (0..n).map(|k| integrate(-1.0, nodes[j], k)).collect()).collect();
    let right = (0..n).map(|j| (0..n).map(|k| integrate(nodes[j], 1.0, k)).collect()).collect();
    (left, right)
}
