//! Discrete spectrum, resolvents and spectral flow of the extensions.

mod resolvent;
mod shooting;

pub use resolvent::{apply_sbeta_inverse, gap_lower_bound, krein_phi_z, solve_with_condition};
pub use shooting::{
    beta_of_energy, decaying_solution, eigenvalues_in_gap, energy_samples, outer_radius, shoot, Eigenvalue, ShotData,
    SpectralReport, ENERGY_TOLERANCE, PROBE_RADIUS, ROOT_RESIDUAL,
};

use crate::error::{Error, Result};

/// Sommerfeld fine-structure energy `(1 + nu^2 / (n + sqrt(kappa^2 - nu^2))^2)^{-1/2}`.
pub fn sommerfeld_energy(nu: f64, n: u32, kappa: i32) -> Result<f64> {
    let k2 = f64::from(kappa) * f64::from(kappa);
    if k2 <= nu * nu {
        return Err(Error::Domain { func: "sommerfeld_energy", x: nu });
    }
    let d = f64::from(n) + (k2 - nu * nu).sqrt();
    Ok(1.0 / (1.0 + nu * nu / (d * d)).sqrt())
}

#[cfg(test)]
mod tests;
