//! Signed decimal values with an unbounded exponent, `mantissa · 10^exp10`.
//!
//! Large-`n` Stieltjes constants reach `10^{700}` and beyond, past the range
//! of `f64`, so every public estimate carries one of these.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const LN_10: f64 = std::f64::consts::LN_10;

/// `mantissa · 10^exp10` with `1 <= |mantissa| < 10`, or zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SciValue {
    mantissa: f64,
    exp10: i64,
}

impl SciValue {
    pub const ZERO: SciValue = SciValue {
        mantissa: 0.0,
        exp10: 0,
    };

    pub fn from_f64(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::domain(
                "SciValue::from_f64",
                format!("{x} is not finite"),
            ));
        }
        Ok(Self::normalize(x, 0))
    }

    /// Builds `sign · e^{ln_abs}`; `sign` is only inspected for its sign.
    pub fn from_sign_ln(sign: f64, ln_abs: f64) -> Result<Self> {
        if sign == 0.0 || ln_abs == f64::NEG_INFINITY {
            return Ok(Self::ZERO);
        }
        if !ln_abs.is_finite() || sign.is_nan() {
            return Err(Error::domain(
                "SciValue::from_sign_ln",
                format!("log-magnitude {ln_abs} is not finite"),
            ));
        }
        let log10 = ln_abs / LN_10;
        let exp10 = log10.floor();
        let mantissa = 10f64.powf(log10 - exp10).copysign(sign);
        Ok(Self::normalize(mantissa, exp10 as i64))
    }

    fn normalize(mut mantissa: f64, mut exp10: i64) -> Self {
        if mantissa == 0.0 {
            return Self::ZERO;
        }
        let shift = mantissa.abs().log10().floor() as i64;
        if shift != 0 {
            mantissa /= 10f64.powi(shift as i32);
            exp10 += shift;
        }
        // log10 rounding can leave the mantissa a hair outside [1, 10)
        if mantissa.abs() >= 10.0 {
            mantissa /= 10.0;
            exp10 += 1;
        } else if mantissa.abs() < 1.0 {
            mantissa *= 10.0;
            exp10 -= 1;
        }
        Self { mantissa, exp10 }
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    pub fn exp10(&self) -> i64 {
        self.exp10
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    /// `-1`, `0` or `1`.
    pub fn signum(&self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa.signum()
        }
    }

    /// `log10 |x|`; `-inf` for zero.
    pub fn log10_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.exp10 as f64 + self.mantissa.abs().log10()
        }
    }

    pub fn ln_abs(&self) -> f64 {
        self.log10_abs() * LN_10
    }

    /// The value as `f64`, or `None` outside the finite range.
    pub fn to_f64(&self) -> Option<f64> {
        if self.is_zero() {
            return Some(0.0);
        }
        if self.exp10 > 308 || self.exp10 < -330 {
            return None;
        }
        let v = if self.exp10 > 300 {
            self.mantissa * 1e300 * 10f64.powi((self.exp10 - 300) as i32)
        } else if self.exp10 < -300 {
            self.mantissa * 1e-300 * 10f64.powi((self.exp10 + 300) as i32)
        } else {
            self.mantissa * 10f64.powi(self.exp10 as i32)
        };
        (v.is_finite() && (v != 0.0)).then_some(v)
    }

    /// `self / other`, as a plain number when it fits.
    pub fn ratio(&self, other: &SciValue) -> Option<f64> {
        if other.is_zero() {
            return None;
        }
        let d = self.exp10 - other.exp10;
        if !(-300..=300).contains(&d) {
            return None;
        }
        Some(self.mantissa / other.mantissa * 10f64.powi(d as i32))
    }

    /// Signed `(self - exact) / exact`.
    pub fn relative_error(&self, exact: &SciValue) -> Result<f64> {
        if exact.is_zero() {
            return Err(Error::domain("relative_error", "exact value is zero"));
        }
        match self.ratio(exact) {
            Some(r) => Ok(r - 1.0),
            None => Ok(if self.is_zero() {
                -1.0
            } else {
                f64::INFINITY.copysign(self.signum() * exact.signum())
            }),
        }
    }

    /// Sum of signed terms given as `(sign, ln|x|)`, without leaving log space
    /// for anything but the ratios to the largest term.
    pub fn sum_signed_logs(terms: &[(f64, f64)]) -> Result<Self> {
        let live: Vec<_> = terms
            .iter()
            .filter(|(s, l)| *s != 0.0 && *l != f64::NEG_INFINITY)
            .collect();
        let Some(max_ln) = live.iter().map(|(_, l)| *l).reduce(f64::max) else {
            return Ok(Self::ZERO);
        };
        let scaled: f64 = live
            .iter()
            .map(|(s, l)| s.signum() * (l - max_ln).exp())
            .sum();
        if scaled == 0.0 {
            return Ok(Self::ZERO);
        }
        Self::from_sign_ln(scaled, max_ln + scaled.abs().ln())
    }

    /// Ten significant digits, `d.ddddddddde±X`.
    pub fn to_sci_string(&self) -> String {
        self.format_digits(10)
    }

    pub fn format_digits(&self, digits: usize) -> String {
        assert!(digits >= 1);
        if self.is_zero() {
            return format!("{:.*}e0", digits - 1, 0.0);
        }
        let text = format!("{:.*}", digits - 1, self.mantissa);
        // rounding can carry into a new leading digit
        let (text, exp) = if text.trim_start_matches('-').starts_with("10") {
            (
                format!("{:.*}", digits - 1, self.mantissa / 10.0),
                self.exp10 + 1,
            )
        } else {
            (text, self.exp10)
        };
        format!("{text}e{exp}")
    }
}

impl PartialOrd for SciValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let (a, b) = (self.signum(), other.signum());
        if a != b {
            return a.partial_cmp(&b);
        }
        if a == 0.0 {
            return Some(Ordering::Equal);
        }
        let mag = self
            .exp10
            .cmp(&other.exp10)
            .then(self.mantissa.abs().total_cmp(&other.mantissa.abs()));
        Some(if a > 0.0 { mag } else { mag.reverse() })
    }
}

impl std::ops::Neg for SciValue {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            mantissa: -self.mantissa,
            exp10: self.exp10,
        }
    }
}

impl fmt::Display for SciValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci_string())
    }
}

impl FromStr for SciValue {
    type Err = Error;

    /// Accepts plain decimals and `mantissa e exponent` forms with any
    /// mantissa, e.g. `-0.00079e29`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Parse(format!("not a decimal number: {s:?}"));
        let (mant, exp) = match t.find(['e', 'E']) {
            Some(i) => (&t[..i], t[i + 1..].parse::<i64>().map_err(|_| bad())?),
            None => (t, 0),
        };
        if mant.is_empty()
            || !mant
                .chars()
                .all(|c| c.is_ascii_digit() || "+-.".contains(c))
        {
            return Err(bad());
        }
        let m: f64 = mant.parse().map_err(|_| bad())?;
        if !m.is_finite() {
            return Err(bad());
        }
        Ok(Self::normalize(m, exp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn parse_table_notations() {
        let v: SciValue = "-4.253401e17".parse().unwrap();
        assert_eq!(v.exp10(), 17);
        assert_relative_eq!(v.mantissa(), -4.253401, max_relative = 1e-15);

        let v: SciValue = "-0.00079e29".parse().unwrap();
        assert_eq!(v.exp10(), 25);
        assert_relative_eq!(v.mantissa(), -7.9, max_relative = 1e-14);

        let v: SciValue = "0.000793323817".parse().unwrap();
        assert_relative_eq!(v.to_f64().unwrap(), 0.000793323817, max_relative = 1e-15);

        let v: SciValue = "4.91354e369".parse().unwrap();
        assert!(v.to_f64().is_none());
        assert_relative_eq!(
            v.log10_abs(),
            369.0 + 4.91354f64.log10(),
            max_relative = 1e-15
        );

        assert!("1.2.3".parse::<SciValue>().is_err());
        assert!("abc".parse::<SciValue>().is_err());
        assert!("1e".parse::<SciValue>().is_err());
    }

    #[test]
    fn log_construction_round_trips() {
        for &x in &[1.0, -2.5, 3.0e-200, -7.77e250, 0.1] {
            let v = SciValue::from_sign_ln(x, f64::ln(x.abs())).unwrap();
            assert_relative_eq!(v.to_f64().unwrap(), x, max_relative = 1e-13);
        }
        let big = SciValue::from_sign_ln(-1.0, 1000.0 * LN_10 + 2f64.ln()).unwrap();
        assert_eq!(big.exp10(), 1000);
        assert_relative_eq!(big.mantissa(), -2.0, max_relative = 1e-12);
    }

    #[test]
    fn signed_log_sum() {
        let terms = [(1.0, 5f64.ln()), (-1.0, 3f64.ln()), (1.0, 0.5f64.ln())];
        let v = SciValue::sum_signed_logs(&terms).unwrap();
        assert_relative_eq!(v.to_f64().unwrap(), 2.5, max_relative = 1e-15);
        let cancel = SciValue::sum_signed_logs(&[(1.0, 2.0), (-1.0, 2.0)]).unwrap();
        assert!(cancel.is_zero());
        let huge = SciValue::sum_signed_logs(&[(1.0, 2000.0), (1.0, 2000.0)]).unwrap();
        assert_relative_eq!(huge.ln_abs(), 2000.0 + 2f64.ln(), max_relative = 1e-13);
    }

    #[test]
    fn formatting_is_fixed_width() {
        let v = SciValue::from_f64(-0.009690363192).unwrap();
        assert_eq!(v.to_sci_string(), "-9.690363192e-3");
        let v = SciValue::from_f64(9.99999999999).unwrap();
        assert_eq!(v.to_sci_string(), "1.000000000e1");
        assert_eq!(SciValue::ZERO.to_sci_string(), "0.000000000e0");
        let round: SciValue = v.to_sci_string().parse().unwrap();
        assert_eq!(round.to_sci_string(), v.to_sci_string());
    }

    #[test]
    fn relative_error_and_order() {
        let exact: SciValue = "-7.995221997e27".parse().unwrap();
        let approx: SciValue = "-0.03484e29".parse().unwrap();
        let r = approx.relative_error(&exact).unwrap();
        assert_relative_eq!(r, 3.484 / 7.995221997 - 1.0, max_relative = 1e-12);
        assert!(SciValue::ZERO.relative_error(&SciValue::ZERO).is_err());
        let a: SciValue = "-1e300".parse().unwrap();
        let b: SciValue = "-1e2".parse().unwrap();
        assert!(a < b);
        assert!(b < SciValue::ZERO);
        assert!(SciValue::ZERO < "1e-400".parse().unwrap());
    }
}
