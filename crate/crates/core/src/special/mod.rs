//! Complex elementary functions, Lambert W, Gamma and zeta oracles.

pub mod bernoulli;
pub mod complex;
pub mod gamma;
pub mod lambert;
pub mod zeta;

pub use bernoulli::bernoulli;
pub use complex::{complex_pow, principal_arg, principal_log};
pub use gamma::{complex_gamma, complex_ln_gamma, factorial, ln_factorial, ln_gamma, real_gamma};
pub use lambert::{lambert_w0, WResult};
pub use zeta::{hurwitz_zeta_oracle, zeta_oracle};
