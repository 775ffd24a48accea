//! Stieltjes constants: kernels, a quadrature oracle, saddle-point
//! asymptotics and embedded reference tables.

// `!(x > 0.0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod error;
pub mod kernels;
pub mod oracle;
pub mod quadrature;
pub mod reference;
pub mod scaled;
pub mod special;

pub use asymptotics::{Method, SaddleContext, StieltjesEstimate};
pub use error::{Error, Result};
pub use scaled::SciValue;
