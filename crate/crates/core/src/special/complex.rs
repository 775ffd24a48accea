//! Principal-branch complex logarithm and powers.
//!
//! All branch conventions in the crate go through here: the argument is
//! taken in (-π, π], so a negative real axis approached with a signed zero
//! imaginary part still maps to +π.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Principal argument in (-π, π].
pub fn principal_arg(z: Complex64) -> f64 {
    let arg = z.im.atan2(z.re);
    if arg <= -PI {
        PI
    } else {
        arg
    }
}

/// Principal logarithm `ln|z| + i·arg z` with `arg z ∈ (-π, π]`.
pub fn principal_log(z: Complex64) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::domain("principal_log", "logarithm of zero"));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain(
            "principal_log",
            format!("non-finite argument {z}"),
        ));
    }
    Ok(Complex64::new(z.re.hypot(z.im).ln(), principal_arg(z)))
}

/// `exp(p · log z)` on the principal branch.
///
/// `0^p` is defined as 0 for `p > 0`; any other power of zero is an error.
pub fn complex_pow(z: Complex64, p: f64) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        if p > 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        return Err(Error::domain(
            "complex_pow",
            format!("zero raised to non-positive power {p}"),
        ));
    }
    let w = principal_log(z)? * p;
    let out = w.exp();
    if !(out.re.is_finite() && out.im.is_finite()) {
        return Err(Error::Overflow {
            op: "complex_pow",
            sign: if out.re.is_sign_negative() { -1.0 } else { 1.0 },
        });
    }
    Ok(out)
}
