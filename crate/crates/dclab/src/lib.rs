// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod extensions;
pub mod greenop;
pub mod homogeneous;
pub mod radial;
pub mod specfun;
pub mod spectral;

pub use error::{Error, Result};
