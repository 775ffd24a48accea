//! Gamma and log-Gamma.
//!
//! Lanczos approximation with g = 7 and nine coefficients (the set used by
//! most numerical libraries), exact factorials for small integers.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Largest `x` with finite `Γ(x)` in double precision.
pub const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// `k!` for `k <= 20`, exact in `f64`.
const FACTORIALS: [f64; 21] = [
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
    2432902008176640000.0,
];

/// `n!` as a float; exact for `n <= 20`, overflows to an error past 170.
pub fn factorial(n: usize) -> Result<f64> {
    if n < FACTORIALS.len() {
        return Ok(FACTORIALS[n]);
    }
    real_gamma(n as f64 + 1.0)
}

/// `ln n!`
pub fn ln_factorial(n: usize) -> f64 {
    if n < FACTORIALS.len() {
        FACTORIALS[n].ln()
    } else {
        ln_gamma(n as f64 + 1.0)
    }
}

/// `Γ(x)` for real `x > 0`.
pub fn real_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "real_gamma",
            format!("argument {x} must be positive and finite"),
        ));
    }
    if x.fract() == 0.0 && x <= FACTORIALS.len() as f64 {
        return Ok(FACTORIALS[x as usize - 1]);
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::Overflow {
            op: "real_gamma",
            sign: 1.0,
        });
    }
    if x < 0.5 {
        // Γ(x) = π / (sin(πx) Γ(1-x))
        return Ok(PI / ((PI * x).sin() * lanczos_gamma(1.0 - x)));
    }
    if x < 20.0 {
        return Ok(lanczos_gamma(x));
    }
    Ok(ln_gamma(x).exp())
}

fn lanczos_gamma(x: f64) -> f64 {
    let x = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// `ln Γ(x)` for real `x > 0`.
///
/// Large arguments use the Stirling series, which is more accurate than
/// Lanczos once `ln Γ` is big.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x >= 15.0 {
        let inv = 1.0 / x;
        let inv2 = inv * inv;
        let series = inv
            * (1.0 / 12.0
                - inv2
                    * (1.0 / 360.0
                        - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
        return (x - 0.5) * x.ln() - x + HALF_LN_2PI + series;
    }
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let xm = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (xm + i as f64);
    }
    let t = xm + LANCZOS_G + 0.5;
    HALF_LN_2PI + (xm + 0.5) * t.ln() - t + acc.ln()
}

/// Principal `ln Γ(s)` for complex `s`, not a non-positive integer.
///
/// Uses the reflection formula for `Re s < 0.5`. The imaginary part is the
/// continuous branch from the Lanczos sum, not reduced mod 2π.
pub fn complex_ln_gamma(s: Complex64) -> Result<Complex64> {
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 {
        return Err(Error::Pole {
            op: "complex_ln_gamma",
            at: s.to_string(),
        });
    }
    if s.re < 0.5 {
        let reflected = complex_ln_gamma(1.0 - s)?;
        let sin = (PI * s).sin();
        return Ok(Complex64::new(PI.ln(), 0.0) - sin.ln() - reflected);
    }
    let z = s - 1.0;
    let mut acc = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok(HALF_LN_2PI + (z + 0.5) * t.ln() - t + acc.ln())
}

/// `Γ(s)` for complex `s`.
pub fn complex_gamma(s: Complex64) -> Result<Complex64> {
    if s.im == 0.0 && s.re > 0.0 {
        return real_gamma(s.re).map(|g| Complex64::new(g, 0.0));
    }
    Ok(complex_ln_gamma(s)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn integer_and_half_integer_values() {
        assert_eq!(real_gamma(5.0).unwrap(), 24.0);
        assert_eq!(real_gamma(1.0).unwrap(), 1.0);
        assert_eq!(real_gamma(21.0).unwrap(), 2432902008176640000.0);
        assert_relative_eq!(real_gamma(0.5).unwrap(), PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(
            real_gamma(1.5).unwrap(),
            0.5 * PI.sqrt(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn overflow_threshold() {
        assert!(real_gamma(171.0).unwrap().is_finite());
        assert!(matches!(
            real_gamma(172.0),
            Err(Error::Overflow { sign, .. }) if sign > 0.0
        ));
    }

    #[test]
    fn nonpositive_is_domain_error() {
        assert!(matches!(real_gamma(0.0), Err(Error::Domain { .. })));
        assert!(matches!(real_gamma(-2.5), Err(Error::Domain { .. })));
    }

    /// Γ(x+1) = xΓ(x) accumulated upward from Γ(1) = 1 gives an independent
    /// route to large factorials.
    #[test]
    fn gamma_matches_log_accumulation() {
        let mut ln_acc = 0.0;
        for k in 1..171u32 {
            ln_acc += (k as f64).ln();
            let g = real_gamma(k as f64 + 1.0).unwrap();
            assert_relative_eq!(g.ln(), ln_acc, max_relative = 1e-13, epsilon = 1e-13);
            assert_relative_eq!(
                ln_gamma(k as f64 + 1.0),
                ln_acc,
                max_relative = 1e-14,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn non_integer_recurrence() {
        for &x in &[0.1, 0.7, 3.3, 12.9, 33.25, 137.017] {
            let lhs = real_gamma(x + 1.0).unwrap();
            let rhs = x * real_gamma(x).unwrap();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
        }
    }

    #[test]
    fn complex_gamma_agrees_with_real_and_reflection() {
        for &x in &[0.25, 0.5, 2.5, 7.0] {
            let g = complex_ln_gamma(Complex64::new(x, 0.0)).unwrap();
            assert_relative_eq!(g.re, ln_gamma(x), epsilon = 1e-13);
            assert!(g.im.abs() < 1e-13);
        }
        // |Γ(iy)|² = π / (y sinh πy)
        let y = 1.7;
        let g = complex_gamma(Complex64::new(0.0, y)).unwrap();
        assert_relative_eq!(
            g.norm_sqr(),
            PI / (y * (PI * y).sinh()),
            max_relative = 1e-13
        );
        assert!(complex_ln_gamma(Complex64::new(-2.0, 0.0)).is_err());
    }
}
