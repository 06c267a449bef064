use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lower edge of the critical coupling window, `sqrt(3)/2`.
pub const CRITICAL_LOWER: f64 = 0.866_025_403_784_438_6;

/// Coulomb coupling `nu` and spin-orbit number `kappa` of one partial wave.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coupling {
    nu: f64,
    kappa: i32,
    exponent: f64,
}

impl Coupling {
    /// Any channel with a real Frobenius exponent, `kappa^2 > nu^2`.
    pub fn new(nu: f64, kappa: i32) -> Result<Self> {
        if !nu.is_finite() {
            return Err(Error::InvalidParams(format!("nu = {nu}")));
        }
        if kappa == 0 {
            return Err(Error::InvalidParams("kappa must be non-zero".into()));
        }
        let k2 = f64::from(kappa * kappa);
        if nu * nu >= k2 {
            return Err(Error::InvalidParams(format!(
                "nu = {nu} is super-critical for kappa = {kappa}"
            )));
        }
        Ok(Self { nu, kappa, exponent: (k2 - nu * nu).sqrt() })
    }

    /// A `kappa = +-1` channel with `sqrt(3)/2 < |nu| < 1`.
    pub fn critical(nu: f64, kappa: i32) -> Result<Self> {
        if kappa.abs() != 1 {
            return Err(Error::Regime(format!("kappa = {kappa}; only kappa = +1 or -1 is critical")));
        }
        if !(nu.abs() > CRITICAL_LOWER && nu.abs() < 1.0) {
            return Err(Error::Regime(format!("nu = {nu}")));
        }
        Self::new(nu, kappa)
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn kappa(&self) -> i32 {
        self.kappa
    }

    /// `sqrt(kappa^2 - nu^2)`; for `|kappa| = 1` this is `B = sqrt(1 - nu^2)`.
    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn is_critical(&self) -> bool {
        self.kappa.abs() == 1 && self.nu.abs() > CRITICAL_LOWER
    }
}
