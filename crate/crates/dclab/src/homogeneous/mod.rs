//! Closed-form solutions of `S u = 0` in the critical channels.

mod coupling;
mod frobenius;
mod system;

pub use coupling::{Coupling, CRITICAL_LOWER};
pub use frobenius::{FrobeniusPair, FrobeniusSeries};
pub use system::{build_fundamental_system, build_u_pair, wronskian_at, wronskian_real, FundamentalSystem, UPair};
