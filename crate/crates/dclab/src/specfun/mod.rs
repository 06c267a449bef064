//! Gamma, Kummer and Tricomi functions for real arguments.

mod gamma;
mod kummer;
mod tricomi;

pub use gamma::{gamma_fn, sin_pi};
pub use kummer::kummer_m;
pub use tricomi::{tricomi_u, tricomi_u_connection};

use crate::error::{Error, Result};

/// Parameters `(a, b)` of the confluent hypergeometric equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeometricParams {
    pub a: f64,
    pub b: f64,
}

impl HypergeometricParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParams(format!("non-finite (a, b) = ({a}, {b})")));
        }
        if b <= 0.0 && b == b.round() {
            return Err(Error::InvalidParams(format!("b = {b} is a non-positive integer")));
        }
        Ok(Self { a, b })
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_positive_integer_b() {
        assert!(HypergeometricParams::new(0.3, 0.0).is_err());
        assert!(HypergeometricParams::new(0.3, -2.0).is_err());
        assert!(HypergeometricParams::new(0.3, 0.5).is_ok());
    }

    #[test]
    fn compensated_sum_keeps_small_terms() {
        let mut s = CompensatedSum::default();
        s.add(1.0);
        for _ in 0..10 {
            s.add(1e-17);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-16).abs() < 1e-30);
    }
}
