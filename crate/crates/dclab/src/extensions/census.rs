use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 0 when the channel is essentially self-adjoint, 1 when it needs a boundary condition.
pub fn deficiency_index(nu: f64, kappa: i32) -> u8 {
    let k = f64::from(kappa);
    if nu * nu <= k * k - 0.25 {
        0
    } else {
        1
    }
}

/// One partial wave `(j, m_j, kappa)` with its deficiency index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Channel {
    pub j: f64,
    pub m_j: f64,
    pub kappa: i32,
    pub index: u8,
}

/// All channels with `j <= j_max`, ordered by `j`, then `kappa`, then `m_j`.
pub fn channel_census(nu: f64, j_max: f64) -> Result<Vec<Channel>> {
    let twice = 2.0 * j_max;
    if !(twice >= 1.0 && (twice - twice.round()).abs() < 1e-12 && twice.round() as i64 % 2 == 1) {
        return Err(Error::InvalidParams(format!("j_max = {j_max} is not a positive half-odd integer")));
    }
    let top = twice.round() as i32;
    let mut out = Vec::new();
    for tj in (1..=top).step_by(2) {
        let j = f64::from(tj) / 2.0;
        let k = (tj + 1) / 2;
        for kappa in [-k, k] {
            for tm in (-tj..=tj).step_by(2) {
                out.push(Channel { j, m_j: f64::from(tm) / 2.0, kappa, index: deficiency_index(nu, kappa) });
            }
        }
    }
    Ok(out)
}
