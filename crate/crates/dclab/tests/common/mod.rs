#![allow(dead_code)]

pub mod oracle;

use std::sync::Arc;

use dclab::radial::{GridParams, RadialGrid};

pub fn rel(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

pub fn default_grid() -> Arc<RadialGrid> {
    Arc::new(RadialGrid::new(GridParams::default()).unwrap())
}

/// Closed-form constants of one coupling, as frozen by the generator.
pub struct Frozen {
    pub nu: f64,
    pub b: f64,
    pub w: f64,
    pub q: [f64; 2],
    pub lead: [f64; 2],
    pub norm_sq: f64,
    pub p: [f64; 2],
    pub c: f64,
    pub d: f64,
}

pub fn frozen() -> [Frozen; 3] {
    use oracle::*;
    [
        Frozen {
            nu: 0.88,
            b: B_088,
            w: W_088,
            q: [Q_PLUS_088, Q_MINUS_088],
            lead: [LEAD_PLUS_088, LEAD_MINUS_088],
            norm_sq: VINF_NORM_SQ_088,
            p: [P_PLUS_088, P_MINUS_088],
            c: C_NU_088,
            d: D_NU_088,
        },
        Frozen {
            nu: 0.9,
            b: B_09,
            w: W_09,
            q: [Q_PLUS_09, Q_MINUS_09],
            lead: [LEAD_PLUS_09, LEAD_MINUS_09],
            norm_sq: VINF_NORM_SQ_09,
            p: [P_PLUS_09, P_MINUS_09],
            c: C_NU_09,
            d: D_NU_09,
        },
        Frozen {
            nu: 0.95,
            b: B_095,
            w: W_095,
            q: [Q_PLUS_095, Q_MINUS_095],
            lead: [LEAD_PLUS_095, LEAD_MINUS_095],
            norm_sq: VINF_NORM_SQ_095,
            p: [P_PLUS_095, P_MINUS_095],
            c: C_NU_095,
            d: D_NU_095,
        },
    ]
}
