use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::GreenOperator;
use crate::error::{Error, Result};
use crate::radial::SpinorFunction;

pub const DEFAULT_SEED: u64 = 0x5D1_u64;
const MAX_ITERATIONS: usize = 2000;
const CHANGE_TOLERANCE: f64 = 1e-8;

/// Power-iteration estimate of `||S_D^{-1}||` with its convergence record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub iterations: usize,
    pub relative_change: f64,
    pub seed: u64,
}

/// Power iteration on `(S_D^{-1})^2` starting from a seeded random vector.
pub fn estimate_sd_inverse_norm(op: &GreenOperator, seed: u64) -> Result<NormEstimate> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = SpinorFunction::from_fn(op.grid().clone(), |_| {
        [Complex64::from(rng.gen_range(-1.0..1.0)), Complex64::from(rng.gen_range(-1.0..1.0))]
    });
    x = x.scale(Complex64::from(1.0 / x.norm()));
    let mut previous = 0.0;
    for k in 1..=MAX_ITERATIONS {
        let y = op.apply(&op.apply(&x)?)?;
        let growth = y.norm();
        let value = growth.sqrt();
        let change = ((value - previous) / value).abs();
        if change <= CHANGE_TOLERANCE {
            return Ok(NormEstimate { value, iterations: k, relative_change: change, seed });
        }
        previous = value;
        x = y.scale(Complex64::from(1.0 / growth));
    }
    Err(Error::NoConvergence(MAX_ITERATIONS))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::homogeneous::Coupling;
    use crate::radial::{GridParams, RadialGrid};

    #[test]
    fn estimate_bounds_random_quotients() {
        let grid = Arc::new(RadialGrid::new(GridParams { panels: 200, ..GridParams::default() }).unwrap());
        let op = GreenOperator::new(&Coupling::critical(0.9, 1).unwrap(), grid.clone()).unwrap();
        let est = estimate_sd_inverse_norm(&op, DEFAULT_SEED).unwrap();
        assert!(est.value > 1.0 && est.value < 10.0, "{est:?}");
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let g = SpinorFunction::from_fn(grid.clone(), |r| {
                let a: f64 = rng.gen_range(-1.0..1.0);
                let b: f64 = rng.gen_range(-1.0..1.0);
                [Complex64::from(a * (-0.2 * r).exp()), Complex64::from(b * (-0.2 * r).exp())]
            });
            let ratio = op.apply(&g).unwrap().norm() / g.norm();
            assert!(ratio <= est.value * (1.0 + 1e-9));
        }
    }
}
