//! Half-line discretisation: grids, sampled spinors, the differential
//! operator and initial-value integration.

mod dirac;
pub mod gauss;
mod grid;
pub mod io;
mod ivp;
mod spinor;

pub use dirac::{apply_dirac, DiracApplication, EDGE_NODES};
pub use grid::{make_grid, GridParams, RadialGrid};
pub use ivp::{integrate_ivp, integrate_ivp_with_source, integrate_real, Direction, Trajectory, STEP_TOLERANCE};
pub use spinor::{inner_product, SpinorFunction};
