//! Saddle-point approximations of the Stieltjes constants.
//!
//! Every term has the shape `C · Re{e^L}` with a real prefactor `C` and a
//! complex exponent `L`, so it is evaluated as `(sign, ln|·|)` and the value
//! never has to fit in an `f64`.

use std::collections::BTreeMap;
use std::f64::consts::{LN_10, LN_2, PI};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scaled::SciValue;
use crate::special::{lambert_w0, principal_log};

/// Largest accepted saddle-equation residual.
pub const SADDLE_RESIDUAL_TOL: f64 = 1e-10;

/// `a = log(2π) + iπ/2`.
pub fn a_const() -> Complex64 {
    Complex64::new((2.0 * PI).ln(), PI / 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    OneTerm,
    MTerm,
    LeadingOrder,
    KnesslCoffey,
    Oracle,
    Reference,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::OneTerm => "one_term",
            Method::MTerm => "m_term",
            Method::LeadingOrder => "leading_order",
            Method::KnesslCoffey => "knessl_coffey",
            Method::Oracle => "oracle",
            Method::Reference => "reference",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StieltjesEstimate {
    pub n: f64,
    pub value: SciValue,
    pub method: Method,
    pub terms: usize,
    pub diagnostics: BTreeMap<String, f64>,
}

impl StieltjesEstimate {
    pub fn value_f64(&self) -> Option<f64> {
        self.value.to_f64()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleContext {
    pub n_eff: f64,
    pub a: Complex64,
    pub z0: Complex64,
    pub f_at_z0: Complex64,
    pub fpp_at_z0: Complex64,
    /// `|z0·(log(n_eff·z0/2π) + iπ/2) − 1|`
    pub residual: f64,
}

/// `z0 = (2π/(n_eff·i))·e^{W(i·n_eff/2π)}` on the principal branch.
///
/// This root lies in the fourth quadrant and solves
/// `z·(log(n_eff·z/2π) + iπ/2) = 1`; its conjugate solves the equation with
/// `− iπ/2`. Every term below is `Re` of a real-coefficient function of `z0`,
/// so the two roots give the same estimates.
pub fn saddle_point(n_eff: f64) -> Result<SaddleContext> {
    if !(n_eff >= 1.0) || !n_eff.is_finite() {
        return Err(Error::domain(
            "saddle_point",
            format!("n_eff = {n_eff} must be >= 1"),
        ));
    }
    let w = lambert_w0(Complex64::new(0.0, n_eff / (2.0 * PI)))?.w;
    // (2π/(N i))·e^{W} simplifies to 1/W via W e^W = iN/2π
    let z0 = w.inv();
    let log_z0 = principal_log(z0)?;
    let inner = principal_log(z0 * (n_eff / (2.0 * PI)))? + Complex64::new(0.0, PI / 2.0);
    let residual = (z0 * inner - 1.0).norm();
    if residual > SADDLE_RESIDUAL_TOL {
        return Err(Error::Convergence {
            op: "saddle_point",
            iterations: 0,
            residual,
        });
    }
    if !(z0.re > 0.0 && z0.im < 0.0) {
        return Err(Error::domain(
            "saddle_point",
            format!("saddle {z0} is not in the fourth quadrant"),
        ));
    }
    Ok(SaddleContext {
        n_eff,
        a: a_const(),
        z0,
        f_at_z0: -z0 - log_z0,
        fpp_at_z0: -1.0 - z0.inv(),
        residual,
    })
}

/// The two algebraically equal ways of writing a saddle term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermForm {
    /// `(Nz−1)·√(−2π/(N f″(z)))·e^{N f(z)}`
    Listing,
    /// `√(2π/N)·(Nz−1)·z^{1/2−N} / (e^{Nz}·√(1+z))`
    Closed,
}

/// `(sign, ln|term|)` of `C·Re{e^L}` for the `k`-th term, where
/// `C = 2·n!/(n+1+k)!` and `N = n+2+k`.
pub fn saddle_term(n: f64, k: usize, z: Complex64, form: TermForm) -> Result<(f64, f64)> {
    let (ln_pref, l) = term_exponent(n, k, z, form)?;
    let c = l.im.cos();
    Ok((c.signum(), ln_pref + l.re + c.abs().ln()))
}

/// `ln|C·e^L|`, the size of the `k`-th term with its oscillating factor dropped.
pub fn saddle_envelope(n: f64, k: usize, z: Complex64) -> Result<f64> {
    let (ln_pref, l) = term_exponent(n, k, z, TermForm::Listing)?;
    Ok(ln_pref + l.re)
}

fn term_exponent(n: f64, k: usize, z: Complex64, form: TermForm) -> Result<(f64, Complex64)> {
    let big_n = n + 2.0 + k as f64;
    let ln_pref = LN_2 - (1..=k + 1).map(|j| (n + j as f64).ln()).sum::<f64>();
    let log_z = principal_log(z)?;
    let l = match form {
        TermForm::Listing => {
            let f = -z - log_z;
            let fpp = -1.0 - z.inv();
            principal_log(big_n * z - 1.0)?
                + big_n * f
                + 0.5 * principal_log(-2.0 * PI / (big_n * fpp))?
        }
        TermForm::Closed => {
            0.5 * (2.0 * PI / big_n).ln() + principal_log(big_n * z - 1.0)? + (0.5 - big_n) * log_z
                - big_n * z
                - 0.5 * principal_log(1.0 + z)?
        }
    };
    Ok((ln_pref, l))
}

/// One-term saddle approximation; `n` may be non-integer.
pub fn gamma_one_term(n: f64) -> Result<StieltjesEstimate> {
    if !(n >= 2.0) || !n.is_finite() {
        return Err(Error::domain(
            "gamma_one_term",
            format!("n = {n} must be >= 2"),
        ));
    }
    let ctx = saddle_point(n + 2.0)?;
    let (sign, ln_abs) = saddle_term(n, 0, ctx.z0, TermForm::Listing)?;
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("saddle_residual".into(), ctx.residual);
    diagnostics.insert("z0_re".into(), ctx.z0.re);
    diagnostics.insert("z0_im".into(), ctx.z0.im);
    Ok(StieltjesEstimate {
        n,
        value: SciValue::from_sign_ln(sign, ln_abs)?,
        method: Method::OneTerm,
        terms: 1,
        diagnostics,
    })
}

/// `M`-term approximation. By default each term uses the saddle of its own
/// `n+2+k`; `shared_saddle` fixes the saddle of `n+2` for every term.
pub fn gamma_m_term(n: u64, m: usize, shared_saddle: bool) -> Result<StieltjesEstimate> {
    if n < 2 {
        return Err(Error::domain(
            "gamma_m_term",
            format!("n = {n} must be >= 2"),
        ));
    }
    if m < 1 {
        return Err(Error::domain(
            "gamma_m_term",
            "at least one term is required",
        ));
    }
    let nf = n as f64;
    let shared = saddle_point(nf + 2.0)?;
    let mut parts = Vec::with_capacity(m);
    let mut diagnostics = BTreeMap::new();
    let mut worst_residual: f64 = 0.0;
    for k in 0..m {
        let ctx = if shared_saddle || k == 0 {
            shared
        } else {
            saddle_point(nf + 2.0 + k as f64)?
        };
        worst_residual = worst_residual.max(ctx.residual);
        let (sign, ln_abs) = saddle_term(nf, k, ctx.z0, TermForm::Listing)?;
        diagnostics.insert(format!("term{k}_sign"), sign);
        diagnostics.insert(format!("term{k}_log10_abs"), ln_abs / LN_10);
        diagnostics.insert(
            format!("term{k}_log10_envelope"),
            saddle_envelope(nf, k, ctx.z0)? / LN_10,
        );
        parts.push((sign, ln_abs));
    }
    diagnostics.insert("saddle_residual".into(), worst_residual);
    diagnostics.insert(
        "shared_saddle".into(),
        if shared_saddle { 1.0 } else { 0.0 },
    );
    Ok(StieltjesEstimate {
        n: nf,
        value: SciValue::sum_signed_logs(&parts)?,
        method: Method::MTerm,
        terms: m,
        diagnostics,
    })
}

/// Closed-form leading growth and oscillation of `γₙ`, for `n >= 5`.
pub fn gamma_leading_order(n: u64) -> Result<StieltjesEstimate> {
    if n < 5 {
        return Err(Error::domain(
            "gamma_leading_order",
            format!("n = {n}: log log((n+2)/2π) is undefined below n = 5"),
        ));
    }
    let np2 = n as f64 + 2.0;
    let nh = n as f64 + 0.5;
    let l = (np2 / (2.0 * PI)).ln();
    let c = (nh * PI / (2.0 * np2.ln())).cos();
    let ln_abs =
        (2.0 * (2.0 * PI).sqrt()).ln() - 0.5 * np2.ln() + nh * l.ln() - np2 / l + c.abs().ln();
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("cos_factor".into(), c);
    Ok(StieltjesEstimate {
        n: n as f64,
        value: SciValue::from_sign_ln(c, ln_abs)?,
        method: Method::LeadingOrder,
        terms: 1,
        diagnostics,
    })
}

/// Knessl–Coffey closed-form asymptotic
/// `γₙ ≈ B/√n · e^{nA} · cos(αn + β)`, with `(u, v)` from
/// `2π e^{v tan v} = n cos(v)/v` and `u = v tan v`.
pub fn gamma_knessl_coffey(n: u64) -> Result<StieltjesEstimate> {
    if n < 2 {
        return Err(Error::domain(
            "gamma_knessl_coffey",
            format!("n = {n} must be >= 2"),
        ));
    }
    let nf = n as f64;
    let v = knessl_coffey_v(nf);
    let u = v * v.tan();
    let r2 = u * u + v * v;
    let big_a = 0.5 * r2.ln() - u / r2;
    let ln_b =
        (2.0 * (2.0 * PI).sqrt()).ln() + 0.5 * r2.ln() - 0.25 * ((u + 1.0).powi(2) + v * v).ln();
    let alpha = (v / u).atan() + v / r2;
    let beta = (v / u).atan() - 0.5 * (v / (u + 1.0)).atan();
    let c = (alpha * nf + beta).cos();
    let ln_abs = ln_b - 0.5 * nf.ln() + nf * big_a + c.abs().ln();
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("u".into(), u);
    diagnostics.insert("v".into(), v);
    Ok(StieltjesEstimate {
        n: nf,
        value: SciValue::from_sign_ln(c, ln_abs)?,
        method: Method::KnesslCoffey,
        terms: 1,
        diagnostics,
    })
}

// Root of ln 2π + v tan v − ln n − ln cos v + ln v on (0, π/2); the function
// is increasing there, so bisection always brackets it.
fn knessl_coffey_v(n: f64) -> f64 {
    let h = |v: f64| (2.0 * PI).ln() + v * v.tan() - n.ln() - v.cos().ln() + v.ln();
    let (mut lo, mut hi) = (f64::MIN_POSITIVE, PI / 2.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `|μₙ| ~ n log n / e^{n log n}`, returned with its natural log.
pub fn mu_n_asymptotic_magnitude(n: u64) -> Result<(f64, f64)> {
    if n < 3 {
        return Err(Error::domain(
            "mu_n_asymptotic_magnitude",
            format!("n = {n} must be >= 3"),
        ));
    }
    let nf = n as f64;
    let ln_value = nf.ln() + nf.ln().ln() - nf * nf.ln();
    Ok((ln_value.exp(), ln_value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn f(e: &StieltjesEstimate) -> f64 {
        e.value_f64().unwrap()
    }

    #[test]
    fn saddle_residual_and_quadrant() {
        for &n in &[1.0, 4.0, 10.0, 139.0, 1e4, 1e5] {
            let ctx = saddle_point(n).unwrap();
            assert!(ctx.residual <= SADDLE_RESIDUAL_TOL, "n = {n}");
            assert!(ctx.z0.re > 0.0 && ctx.z0.im < 0.0);
            let log_z = principal_log(ctx.z0).unwrap();
            assert!((ctx.f_at_z0 - (-ctx.z0 - log_z)).norm() < 1e-15);
        }
        assert!(saddle_point(0.5).is_err());
        assert!(saddle_point(f64::NAN).is_err());
    }

    /// z0 ~ e^{-iπ/(2 log n)}/log(n/2π) for large n. The neglected terms are
    /// O(log log n / log n), so the gap closes slowly.
    #[test]
    fn saddle_approaches_asymptotic_form() {
        let rough =
            |n: f64| Complex64::from_polar(1.0 / (n / (2.0 * PI)).ln(), -PI / (2.0 * n.ln()));
        let rel = |n: f64| (saddle_point(n).unwrap().z0 - rough(n)).norm() / rough(n).norm();
        assert!(rel(139.0) < 0.35, "{}", rel(139.0));
        assert!(rel(1e4) < rel(139.0));
        assert!(rel(1e7) < rel(1e5) && rel(1e5) < rel(1e4));
    }

    #[test]
    fn both_term_forms_agree() {
        for &n in &[5.0, 20.0, 50.0] {
            for k in 0..3 {
                let z = saddle_point(n + 2.0 + k as f64).unwrap().z0;
                let (s1, l1) = saddle_term(n, k, z, TermForm::Listing).unwrap();
                let (s2, l2) = saddle_term(n, k, z, TermForm::Closed).unwrap();
                assert_eq!(s1, s2);
                let v1 = s1 * l1.exp();
                let v2 = s2 * l2.exp();
                assert!((v1 - v2).abs() <= 1e-12 * v1.abs(), "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn one_term_table_values() {
        assert_relative_eq!(
            f(&gamma_one_term(5.0).unwrap()),
            0.000825888315,
            max_relative = 1e-7
        );
        assert_relative_eq!(
            f(&gamma_one_term(20.0).unwrap()),
            0.000460162247,
            max_relative = 1e-7
        );
        let e137 = gamma_one_term(137.0).unwrap();
        assert!(e137.value.signum() > 0.0);
        assert_relative_eq!(f(&e137), 1.79099e29, max_relative = 1e-5);
        assert!(gamma_one_term(1.5).is_err());
    }

    #[test]
    fn m_term_table_values() {
        let v = |n, m| f(&gamma_m_term(n, m, false).unwrap());
        assert_relative_eq!(v(2, 3), -0.008382380783, max_relative = 1e-7);
        assert_relative_eq!(v(20, 3), 0.0004652039644, max_relative = 1e-7);
        assert_relative_eq!(v(50, 3), 126.7545688, max_relative = 1e-7);
        assert_relative_eq!(v(137, 3), -0.03484e29, max_relative = 1e-3);
        assert!(gamma_m_term(5, 0, false).is_err());
        assert!(gamma_m_term(1, 3, false).is_err());
    }

    #[test]
    fn one_term_is_m_term_with_one_term() {
        for n in [5u64, 20, 137] {
            let a = gamma_one_term(n as f64).unwrap().value;
            assert_eq!(gamma_m_term(n, 1, true).unwrap().value, a);
            assert_eq!(gamma_m_term(n, 1, false).unwrap().value, a);
        }
    }

    #[test]
    fn huge_n_stays_in_log_space() {
        let e = gamma_m_term(1400, 3, false).unwrap();
        assert!(e.value_f64().is_none());
        assert_eq!(e.value.exp10(), 728);
        assert_relative_eq!(e.value.mantissa(), -4.09772, max_relative = 1e-5);
        let e = gamma_m_term(100_000, 3, false).unwrap();
        assert!(e.value.log10_abs().is_finite());
    }

    #[test]
    fn knessl_coffey_table_values() {
        let v = |n| f(&gamma_knessl_coffey(n).unwrap());
        assert_relative_eq!(v(3), 0.00190188, max_relative = 1e-5);
        assert_relative_eq!(v(5), 0.000812965, max_relative = 1e-5);
        assert_relative_eq!(v(20), 0.000471981, max_relative = 1e-5);
        assert_relative_eq!(v(50), 127.549, max_relative = 1e-5);
        assert!(v(137) > 0.0);
    }

    /// Independent evaluation of the same leading-order expression.
    #[test]
    fn leading_order_formula() {
        for n in [5u64, 30, 100] {
            let nf = n as f64;
            let direct = 2.0 * (2.0 * PI).sqrt() / (nf + 2.0).sqrt()
                * ((nf + 0.5) * ((nf + 2.0).ln() - (2.0 * PI).ln()).ln()
                    - (nf + 2.0) / ((nf + 2.0) / (2.0 * PI)).ln())
                .exp()
                * ((nf + 0.5) * PI / (2.0 * (nf + 2.0).ln())).cos();
            assert_relative_eq!(
                f(&gamma_leading_order(n).unwrap()),
                direct,
                max_relative = 1e-10
            );
        }
        assert!(gamma_leading_order(4).is_err());
        assert!(gamma_leading_order(100).unwrap().value.signum() < 0.0);
    }

    #[test]
    fn mu_magnitude_decays_superexponentially() {
        let (v10, l10) = mu_n_asymptotic_magnitude(10).unwrap();
        assert_relative_eq!(v10, 10.0 * 10f64.ln() / 1e10, max_relative = 1e-12);
        assert_relative_eq!(l10, v10.ln(), max_relative = 1e-12);
        let mut prev = mu_n_asymptotic_magnitude(3).unwrap().1;
        let mut prev_drop = 0.0;
        for n in 4..200 {
            let l = mu_n_asymptotic_magnitude(n).unwrap().1;
            assert!(prev - l > prev_drop);
            prev_drop = prev - l;
            prev = l;
        }
        assert!(mu_n_asymptotic_magnitude(2).is_err());
    }
}
