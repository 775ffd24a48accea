//! Ground-truth values from the exact integral representations.
//!
//! `μₙ = (2/n!)∫₀^∞ μ(t)·Re{(a − log t)ⁿ} dt` is split at `t = T`:
//!
//! * on `[0, T]` the Bernoulli series of `μ` is integrated term by term,
//!   `∫₀^T t^{p−1}(a − log t)ⁿ dt / n! = T^p p^{−n−1} Σ_{j≤n} (p(a − log T))^j / j!`,
//!   and since `e^{p·a}` is purely imaginary for odd `p` the real part can be
//!   taken from the exponential's remainder instead of the partial sum when
//!   that is the smaller of the two;
//! * on `[T, ∞)` the integrand is smooth in `u = log t` and goes to the
//!   adaptive integrator.
//!
//! Integrating straight through `t → 0` instead loses every digit past
//! `n ≈ 15` to the cancellation the first bullet removes analytically.

use std::collections::BTreeMap;
use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{a_const, Method, StieltjesEstimate};
use crate::error::{Error, Result};
use crate::kernels;
use crate::quadrature::{integrate, QuadResult, Tolerance};
use crate::scaled::SciValue;
use crate::special::{
    bernoulli, complex_gamma, factorial, hurwitz_zeta_oracle, ln_factorial, real_gamma, zeta_oracle,
};

/// Largest `n` for which [`mu_n`] is attempted.
pub const N_MAX_MU: usize = 104;
/// Largest `n` for which [`gamma_oracle`] is attempted.
pub const N_MAX_GAMMA: usize = 40;

/// Bernoulli-series terms integrated on `[0, T]`.
const SMALL_T_TERMS: usize = 90;
/// Unit intervals summed by [`knessl_coffey_integral`] before giving up.
const KC_MAX_INTERVALS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
    /// lower truncation in `u = log t`
    pub u_min: f64,
    /// upper truncation in `u = log t`
    pub u_max: f64,
    /// where the small-`t` series hands over to quadrature
    pub split_t: f64,
    /// relative stopping threshold for the tail sum
    pub tail_tol: f64,
    /// most tail terms summed
    pub k_tail: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-30,
            rel_tol: 1e-7,
            max_depth: 40,
            u_min: -60.0,
            u_max: 1000f64.ln(),
            split_t: 4.0,
            tail_tol: 1e-14,
            k_tail: 64,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::domain("QuadratureConfig", what.to_string()));
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return bad("tolerances must be positive");
        }
        if !(self.u_min < self.u_max) {
            return bad("u_min must be below u_max");
        }
        if self.max_depth < 10 {
            return bad("max_depth must be at least 10");
        }
        // the Bernoulli series of μ converges for t < 2π
        if !(self.split_t > 0.0 && self.split_t <= 5.0 && self.split_t.ln() < self.u_max) {
            return bad("split_t must lie in (0, 5] and below e^u_max");
        }
        if !(self.tail_tol > 0.0) || self.k_tail == 0 {
            return bad("tail_tol and k_tail must be positive");
        }
        Ok(())
    }

    fn tolerance(&self) -> Tolerance {
        Tolerance {
            abs: self.abs_tol,
            rel: self.rel_tol,
            max_depth: self.max_depth,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MuCoefficient {
    pub n: usize,
    pub value: f64,
    pub error_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralValue {
    pub value: f64,
    pub error_estimate: f64,
}

fn accuracy_check(op: &'static str, value: f64, err: f64, cfg: &QuadratureConfig) -> Result<()> {
    let tolerance = cfg.abs_tol.max(cfg.rel_tol * value.abs());
    if err > tolerance || !value.is_finite() {
        return Err(Error::Accuracy {
            op,
            value,
            error_estimate: err,
            tolerance,
        });
    }
    Ok(())
}

/// Breakpoints in `u` from `lo` up to `u_max`, roughly one per octave of `t`.
fn log_breakpoints(lo: f64, cfg: &QuadratureConfig) -> Vec<f64> {
    let mut pts = vec![lo];
    for u in [-40.0, -20.0, -10.0, -5.0, -2.0, 0.0] {
        if u > lo && u < cfg.u_max {
            pts.push(u);
        }
    }
    let mut t: f64 = 4.0;
    while t.ln() < cfg.u_max {
        if t.ln() > lo + 1e-12 {
            pts.push(t.ln());
        }
        t *= 2.0;
    }
    pts.push(cfg.u_max);
    pts
}

/// `B_{2m}/(2m−2)!` for `m >= 1`.
fn mu_series_coefficient(m: usize) -> f64 {
    if 2 * m <= crate::special::bernoulli::MAX_TABULATED {
        return bernoulli(2 * m) / factorial(2 * m - 2).expect("small factorial");
    }
    // B_{2m} = (−1)^{m+1}·2·(2m)!·ζ(2m)/(2π)^{2m}
    let s = 2 * m;
    let zeta: f64 = (1..=12).rev().map(|k| (k as f64).powi(-(s as i32))).sum();
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    sign * 2.0 * (s as f64) * (s as f64 - 1.0) * zeta / (2.0 * PI).powi(s as i32)
}

/// `Σ_{j<=n} x^j/j!` when that is well conditioned, otherwise `−Σ_{j>n} x^j/j!`.
/// Both have the same real part once multiplied by `T^p` (see module docs).
fn truncated_exp_for_real_part(x: Complex64, n: usize) -> Complex64 {
    if x.norm() > (n + 1) as f64 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for j in 1..=n {
            term *= x / j as f64;
            sum += term;
        }
        sum
    } else {
        let mut term = Complex64::new(1.0, 0.0);
        for j in 1..=n + 1 {
            term *= x / j as f64;
        }
        let mut sum = Complex64::new(0.0, 0.0);
        let mut j = n + 1;
        loop {
            sum += term;
            j += 1;
            term *= x / j as f64;
            if term.norm() <= 1e-18 * sum.norm() || j > n + 10_000 {
                break;
            }
        }
        -sum
    }
}

/// `(2/n!)∫₀^T μ(t) Re{(a − log t)ⁿ} dt` and an error estimate.
fn small_t_part(n: usize, t_split: f64) -> (f64, f64) {
    let b = a_const() - t_split.ln();
    let mut sum = 0.0;
    let mut magnitude = 0.0;
    let mut last = 0.0;
    for m in 1..=SMALL_T_TERMS {
        let p = (2 * m - 1) as f64;
        let s = truncated_exp_for_real_part(b * p, n);
        let weight =
            mu_series_coefficient(m) * (p * t_split.ln() - (n as f64 + 1.0) * p.ln()).exp();
        let term = 2.0 * weight * s.re;
        sum += term;
        magnitude += 2.0 * (weight * s.norm()).abs();
        last = term.abs();
    }
    (sum, 16.0 * f64::EPSILON * magnitude + last)
}

/// `ln` of a bound on `(2/n!)∫_{e^{u_max}}^∞ μ(t)|a − log t|ⁿ dt`.
fn ln_upper_tail_bound(n: usize, u_max: f64) -> f64 {
    let x = u_max.exp();
    let amax = a_const().norm() + u_max + 1.0;
    LN_2 - ln_factorial(n) + (x + 1.0).ln() - x + n as f64 * amax.ln()
}

/// `μₙ` without the accuracy gate; the error estimate is still reported.
pub fn mu_n_estimate(n: usize, cfg: &QuadratureConfig) -> Result<MuCoefficient> {
    cfg.validate()?;
    if n > N_MAX_MU {
        return Err(Error::Range {
            op: "mu_n",
            index: n,
            max: N_MAX_MU,
        });
    }
    let a = a_const();
    let scale = 2.0 / factorial(n)?;
    let (small, small_err) = small_t_part(n, cfg.split_t);
    let integrand = |u: f64| {
        let t = u.exp();
        scale * kernels::mu(t).value * t * (a - u).powi(n as i32).re
    };
    // The two parts cancel to |μₙ| ≪ |part|, and μₙ is unknown up front, so
    // the quadrature runs to its rounding floor; cfg only gates acceptance.
    let floor_only = Tolerance {
        abs: f64::MIN_POSITIVE,
        rel: f64::EPSILON,
        max_depth: cfg.max_depth,
    };
    let r: QuadResult<f64> = integrate(
        integrand,
        &log_breakpoints(cfg.split_t.ln(), cfg),
        floor_only,
    );
    let tail = ln_upper_tail_bound(n, cfg.u_max).exp();
    Ok(MuCoefficient {
        n,
        value: small + r.value,
        error_estimate: small_err + r.abs_error + tail,
    })
}

/// Taylor coefficient `μₙ` of `s(s−1)ζ(s)` at `s = 1`.
pub fn mu_n(n: usize, cfg: &QuadratureConfig) -> Result<MuCoefficient> {
    let mu = mu_n_estimate(n, cfg)?;
    accuracy_check("mu_n", mu.value, mu.error_estimate, cfg)?;
    Ok(mu)
}

/// `γₙ = n!(−1)ⁿ Σ_{j>=2} (−1)^j μ_{n+j}`.
///
/// Summation stops once two consecutive scaled terms fall below
/// `tail_tol·|partial sum|` or below the accumulated coefficient error.
pub fn gamma_oracle(n: usize, cfg: &QuadratureConfig) -> Result<StieltjesEstimate> {
    cfg.validate()?;
    if n > N_MAX_GAMMA {
        return Err(Error::Range {
            op: "gamma_oracle",
            index: n,
            max: N_MAX_GAMMA,
        });
    }
    let fact = factorial(n)?;
    let mut partial = 0.0;
    let mut coeff_err = 0.0;
    let mut last = f64::INFINITY;
    let mut quiet = 0;
    let mut used = 0;
    for j in 0..cfg.k_tail {
        let k = n + 2 + j;
        if k > N_MAX_MU {
            break;
        }
        let mu = mu_n_estimate(k, cfg)?;
        let term = if j % 2 == 0 { mu.value } else { -mu.value };
        partial += term;
        coeff_err += mu.error_estimate;
        last = term.abs();
        used += 1;
        if last < cfg.tail_tol * partial.abs() || last <= coeff_err {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if quiet >= 2 {
            break;
        }
    }
    if quiet < 2 {
        return Err(Error::Convergence {
            op: "gamma_oracle",
            iterations: used,
            residual: fact * last,
        });
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let value = sign * fact * partial;
    let error = fact * (coeff_err + last);
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("error_estimate".into(), error);
    diagnostics.insert("last_term".into(), fact * last);
    diagnostics.insert("coefficient_error".into(), fact * coeff_err);
    Ok(StieltjesEstimate {
        n: n as f64,
        value: SciValue::from_f64(value)?,
        method: Method::Oracle,
        terms: used,
        diagnostics,
    })
}

/// `γₙ = −n! Σ_{k=0}^{n+1} (−1)^k μ_k`, the finite form of the same sum.
pub fn gamma_finite_sum(n: usize, cfg: &QuadratureConfig) -> Result<IntegralValue> {
    let fact = factorial(n)?;
    let mut sum = 0.0;
    let mut err = 0.0;
    for k in 0..=n + 1 {
        let mu = mu_n_estimate(k, cfg)?;
        sum += if k % 2 == 0 { mu.value } else { -mu.value };
        err += mu.error_estimate;
    }
    // the sum cancels to roughly |γₙ|/n!, so rounding of the O(1) terms counts
    err += 4.0 * f64::EPSILON * (n + 2) as f64;
    Ok(IntegralValue {
        value: -fact * sum,
        error_estimate: fact * err,
    })
}

/// `2·Re ∫₀^∞ μ(t)(log t − a)ⁿ dt`, integrated directly in `u = log t`
/// without the small-`t` split. Equals `(−1)ⁿ n! μₙ`.
pub fn i_n(n: usize, cfg: &QuadratureConfig) -> Result<IntegralValue> {
    cfg.validate()?;
    if n > N_MAX_MU {
        return Err(Error::Range {
            op: "i_n",
            index: n,
            max: N_MAX_MU,
        });
    }
    let a = a_const();
    let integrand = |u: f64| {
        let t = u.exp();
        2.0 * kernels::mu(t).value * t * (u - a).powi(n as i32).re
    };
    let r: QuadResult<f64> =
        integrate(integrand, &log_breakpoints(cfg.u_min, cfg), cfg.tolerance());
    // below u_min, μ ≈ 1/6: ∫ e^u |u − a|ⁿ du ≈ e^{u_min}|u_min − a|ⁿ
    let lower = 2.0 / 6.0 * (cfg.u_min + n as f64 * (cfg.u_min.abs() + a.norm() + 1.0).ln()).exp();
    let upper = (ln_upper_tail_bound(n, cfg.u_max) + ln_factorial(n)).exp();
    let err = r.abs_error + lower + upper;
    accuracy_check("i_n", r.value, err, cfg)?;
    Ok(IntegralValue {
        value: r.value,
        error_estimate: err,
    })
}

/// `∫₀^∞ μ(t) dt`, which is `φ(0) = 1/2`.
pub fn mu_integral(cfg: &QuadratureConfig) -> Result<IntegralValue> {
    cfg.validate()?;
    let integrand = |u: f64| {
        let t = u.exp();
        kernels::mu(t).value * t
    };
    let r: QuadResult<f64> =
        integrate(integrand, &log_breakpoints(cfg.u_min, cfg), cfg.tolerance());
    let lower = cfg.u_min.exp() / 6.0;
    Ok(IntegralValue {
        value: r.value + lower,
        error_estimate: r.abs_error + 1e-3 * lower,
    })
}

/// `|L − R|/(1 + |L|)` for `L = s(s−1)ζ(s)Γ(s)` and `R = ∫₀^∞ μ(t) t^s dt`.
pub fn verify_integral_identity(s: Complex64, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    if !(s.re > -1.0) || (s.im == 0.0 && s.re == 1.0) {
        return Err(Error::domain(
            "verify_integral_identity",
            format!("s = {s} needs Re s > -1 and s != 1"),
        ));
    }
    let lhs = s * (s - 1.0) * zeta_oracle(s)? * complex_gamma(s)?;
    let sp1 = s + 1.0;
    let integrand = |u: f64| (sp1 * u).exp() * (kernels::mu(u.exp()).value);
    let r: QuadResult<Complex64> =
        integrate(integrand, &log_breakpoints(cfg.u_min, cfg), cfg.tolerance());
    // μ(t) = 1/6 + O(t²) below e^{u_min}
    let lower = (sp1 * cfg.u_min).exp() / (6.0 * sp1);
    let rhs = r.value + lower;
    accuracy_check("verify_integral_identity", rhs.norm(), r.abs_error, cfg)?;
    Ok((lhs - rhs).norm() / (1.0 + lhs.norm()))
}

/// `|L − R|/(1 + |L|)` for `L = (s−1)ζ(s, a)` and
/// `R = (1/Γ(s))∫₀^∞ ψ(t; a) e^{(1−a)t} t^{s−1} dt`.
pub fn verify_hurwitz_identity(s: f64, a: f64, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    if !(s > 0.0) || s == 1.0 {
        return Err(Error::domain(
            "verify_hurwitz_identity",
            format!("s = {s} needs s > 0, s != 1"),
        ));
    }
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::domain(
            "verify_hurwitz_identity",
            format!("a = {a} outside (0, 1]"),
        ));
    }
    let lhs = (s - 1.0) * hurwitz_zeta_oracle(Complex64::new(s, 0.0), a)?.re;
    let weighted_psi = |t: f64| -> f64 {
        if t < kernels::SERIES_MAX_T {
            kernels::psi(t, a).expect("a checked above").value * ((1.0 - a) * t).exp()
        } else {
            // e^{−at}[(t − 1 + x)/(1 − x)² + (a − 1)t/(1 − x)], x = e^{−t}
            let x = (-t).exp();
            let d = -(-t).exp_m1();
            (-a * t).exp() * ((t - 1.0 + x) / (d * d) + (a - 1.0) * t / d)
        }
    };
    let integrand = |u: f64| {
        let t = u.exp();
        weighted_psi(t) * (s * u).exp()
    };
    let r: QuadResult<f64> =
        integrate(integrand, &log_breakpoints(cfg.u_min, cfg), cfg.tolerance());
    let lower = (a - 0.5) * (s * cfg.u_min).exp() / s;
    let g = real_gamma(s)?;
    let rhs = (r.value + lower) / g;
    accuracy_check("verify_hurwitz_identity", rhs, r.abs_error / g, cfg)?;
    Ok((lhs - rhs).abs() / (1.0 + lhs.abs()))
}

/// `−∫₀^∞ sin(πeᵗ)/π · t^{n−1} e^{−t}(n − t) dt`, summed over the unit
/// intervals of `v = eᵗ` between zeros of `sin(πv)` with repeated averaging
/// of the alternating partial sums.
pub fn knessl_coffey_integral(n: usize, cfg: &QuadratureConfig) -> Result<IntegralValue> {
    cfg.validate()?;
    if n < 1 {
        return Err(Error::domain("knessl_coffey_integral", "n must be >= 1"));
    }
    let nf = n as f64;
    let f = |v: f64| {
        let l = v.ln();
        -(PI * v).sin() / PI * l.powi(n as i32 - 1) * (nf - l) / (v * v)
    };
    let tol = Tolerance {
        abs: 1e-300,
        rel: 1e-14,
        max_depth: cfg.max_depth,
    };
    let target = cfg.rel_tol.max(1e-10);
    let mut partials = Vec::with_capacity(KC_MAX_INTERVALS);
    let mut running = 0.0;
    let mut previous: Option<f64> = None;
    const WINDOW: usize = 40;
    for m in 1..=KC_MAX_INTERVALS {
        let lo = m as f64;
        let r: QuadResult<f64> = integrate(f, &[lo, lo + 1.0], tol);
        running += r.value;
        partials.push(running);
        if m % 100 == 0 && partials.len() >= WINDOW {
            let est = repeated_average(&partials[partials.len() - WINDOW..]);
            if let Some(prev) = previous {
                let diff = (est - prev).abs();
                if diff <= cfg.abs_tol.max(target * est.abs()) {
                    return Ok(IntegralValue {
                        value: est,
                        error_estimate: diff,
                    });
                }
            }
            previous = Some(est);
        }
    }
    let value = previous.unwrap_or(running);
    Err(Error::Accuracy {
        op: "knessl_coffey_integral",
        value,
        error_estimate: (value - running).abs(),
        tolerance: target * value.abs(),
    })
}

fn repeated_average(sums: &[f64]) -> f64 {
    let mut level = sums.to_vec();
    while level.len() > 1 {
        level = level.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    level[0]
}
