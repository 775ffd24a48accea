//! The real kernels φ(t), μ(t) = -φ'(t), g(t) = μ(t)·eᵗ and the Hurwitz
//! kernel ψ(t; a).
//!
//! Each kernel switches between three regimes:
//!
//! * `t < 0.5`: Bernoulli series of `t/(eᵗ-1)` through `B₂₀`, where the closed
//!   forms cancel catastrophically;
//! * `0.5 <= t <= 35`: closed form, written in `x = e^{-t}` so nothing
//!   overflows;
//! * `t > 35`: leading large-`t` behaviour with a first-order `e^{-t}`
//!   correction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::bernoulli;

pub const SERIES_MAX_T: f64 = 0.5;
pub const CLOSED_FORM_MAX_T: f64 = 35.0;

/// Highest even Bernoulli index used by the small-`t` series.
const SERIES_ORDER: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Series,
    ClosedForm,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEval {
    pub value: f64,
    pub regime: Regime,
}

impl KernelEval {
    fn new(value: f64, regime: Regime) -> Self {
        Self { value, regime }
    }
}

fn regime_for(t: f64) -> Regime {
    assert!(t >= 0.0, "kernel argument must be non-negative, got {t}");
    if t < SERIES_MAX_T {
        Regime::Series
    } else if t <= CLOSED_FORM_MAX_T {
        Regime::ClosedForm
    } else {
        Regime::Asymptotic
    }
}

/// `φ(t) = t·eᵗ/(eᵗ-1)² - 1/(eᵗ-1)`, with `φ(0) = 1/2`.
pub fn phi(t: f64) -> KernelEval {
    let regime = regime_for(t);
    let value = match regime {
        Regime::Series => phi_series(t),
        Regime::ClosedForm => phi_closed(t),
        Regime::Asymptotic => phi_asymptotic(t),
    };
    KernelEval::new(value, regime)
}

/// `μ(t) = -φ'(t) = -(2+t)eᵗ/(eᵗ-1)² + 2t·e^{2t}/(eᵗ-1)³`, with `μ(0) = 1/6`.
pub fn mu(t: f64) -> KernelEval {
    let regime = regime_for(t);
    let value = match regime {
        Regime::Series => mu_series(t),
        Regime::ClosedForm => mu_closed(t),
        Regime::Asymptotic => mu_asymptotic(t),
    };
    KernelEval::new(value, regime)
}

/// `g(t) = μ(t)·eᵗ`, which tends to `t - 2`.
pub fn g(t: f64) -> KernelEval {
    let regime = regime_for(t);
    let value = match regime {
        Regime::Series => mu_series(t) * t.exp(),
        Regime::ClosedForm => {
            let x = (-t).exp();
            let d = -(-t).exp_m1();
            ((t - 2.0) + (t + 2.0) * x) / (d * d * d)
        }
        Regime::Asymptotic => {
            let x = (-t).exp();
            (t - 2.0) + ((t + 2.0) + 3.0 * (t - 2.0)) * x
        }
    };
    KernelEval::new(value, regime)
}

/// `ψ(t; a) = φ(t) + (a-1)·t/(eᵗ-1)` for `0 < a <= 1`.
pub fn psi(t: f64, a: f64) -> Result<KernelEval> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::domain("psi", format!("a = {a} outside (0, 1]")));
    }
    let p = phi(t);
    let bose = match p.regime {
        Regime::Series => bose_series(t),
        Regime::ClosedForm | Regime::Asymptotic => {
            let x = (-t).exp();
            t * x / -(-t).exp_m1()
        }
    };
    Ok(KernelEval::new(p.value + (a - 1.0) * bose, p.regime))
}

/// The piecewise model of `g`: `e^{-t²/10}/6` on `[0, 1]`, `t - 2` beyond.
///
/// Diagnostic only; nothing in the computation paths uses it. On `[0, 1]`
/// the Gaussian piece is close to `μ(t)`, not to `g(t)`.
pub fn g_model(t: f64) -> f64 {
    if t <= 1.0 {
        (-t * t / 10.0).exp() / 6.0
    } else {
        t - 2.0
    }
}

// φ(t) = 1/2 - Σ_{m>=1} B_{2m} t^{2m-1}/(2m-1)!
fn phi_series(t: f64) -> f64 {
    let mut sum = 0.0;
    let mut pow_over_fact = t; // t^{2m-1}/(2m-1)!
    for m in 1..=SERIES_ORDER / 2 {
        sum += bernoulli(2 * m) * pow_over_fact;
        pow_over_fact *= t * t / ((2 * m) * (2 * m + 1)) as f64;
    }
    0.5 - sum
}

// μ(t) = Σ_{m>=1} B_{2m} t^{2m-2}/(2m-2)!
fn mu_series(t: f64) -> f64 {
    let mut sum = 0.0;
    let mut pow_over_fact = 1.0;
    for m in 1..=SERIES_ORDER / 2 {
        sum += bernoulli(2 * m) * pow_over_fact;
        pow_over_fact *= t * t / ((2 * m - 1) * (2 * m)) as f64;
    }
    sum
}

// t/(eᵗ-1) = Σ B_n tⁿ/n!
fn bose_series(t: f64) -> f64 {
    let mut sum = 1.0 - 0.5 * t;
    let mut pow_over_fact = t * t / 2.0;
    for m in 1..=SERIES_ORDER / 2 {
        sum += bernoulli(2 * m) * pow_over_fact;
        pow_over_fact *= t * t / ((2 * m + 1) * (2 * m + 2)) as f64;
    }
    sum
}

fn phi_closed(t: f64) -> f64 {
    let x = (-t).exp();
    let d = -(-t).exp_m1();
    x * (t - d) / (d * d)
}

fn mu_closed(t: f64) -> f64 {
    let x = (-t).exp();
    let d = -(-t).exp_m1();
    x * ((t - 2.0) + (t + 2.0) * x) / (d * d * d)
}

fn phi_asymptotic(t: f64) -> f64 {
    let x = (-t).exp();
    x * (t - 1.0) * (1.0 + x / (t - 1.0) + 2.0 * x)
}

fn mu_asymptotic(t: f64) -> f64 {
    let x = (-t).exp();
    x * (t - 2.0) * (1.0 + ((t + 2.0) / (t - 2.0) + 3.0) * x)
}
