use num_complex::Complex64;
use proptest::prelude::*;

use stieltjes_core::asymptotics::{
    gamma_m_term, gamma_one_term, saddle_envelope, saddle_point, saddle_term, TermForm,
};
use stieltjes_core::oracle::{gamma_finite_sum, gamma_oracle, mu_n, QuadratureConfig, N_MAX_MU};
use stieltjes_core::reference::load_reference;
use stieltjes_core::special::lambert_w0;
use stieltjes_core::SciValue;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lambert_residual(ln_r in (0.1f64).ln()..(100f64).ln(), theta in -2.999f64..3.0) {
        let z = Complex64::from_polar(ln_r.exp(), theta);
        let w = lambert_w0(z).unwrap().w;
        prop_assert!((w * w.exp() - z).norm() / z.norm() <= 1e-13);
        prop_assert!(w.im.abs() < std::f64::consts::PI);
    }

    #[test]
    fn saddle_residual_small(n in 1.0f64..1e7) {
        let ctx = saddle_point(n).unwrap();
        prop_assert!(ctx.residual <= 1e-10);
        prop_assert!(ctx.z0.re > 0.0 && ctx.z0.im < 0.0);
    }

    #[test]
    fn one_term_is_first_term(n in 2u64..100_000) {
        let one = gamma_one_term(n as f64).unwrap().value;
        prop_assert_eq!(gamma_m_term(n, 1, true).unwrap().value, one);
        prop_assert_eq!(gamma_m_term(n, 1, false).unwrap().value, one);
    }

    #[test]
    fn term_forms_agree(n in 2.0f64..1e5, k in 0usize..4) {
        let z = saddle_point(n + 2.0 + k as f64).unwrap().z0;
        let env = saddle_envelope(n, k, z).unwrap();
        let (s1, l1) = saddle_term(n, k, z, TermForm::Listing).unwrap();
        let (s2, l2) = saddle_term(n, k, z, TermForm::Closed).unwrap();
        let d = s1 * (l1 - env).exp() - s2 * (l2 - env).exp();
        prop_assert!(d.abs() <= 1e-9, "{}", d);
    }

    #[test]
    fn sci_value_string_round_trip(m in 1.0f64..10.0, e in -800i64..800, neg: bool) {
        let s = format!("{}{m:.9}e{e}", if neg { "-" } else { "" });
        let v: SciValue = s.parse().unwrap();
        let back: SciValue = v.to_sci_string().parse().unwrap();
        prop_assert_eq!(back.to_sci_string(), v.to_sci_string());
        prop_assert_eq!(v.exp10(), e);
    }

    #[test]
    fn term_envelopes_decrease(n in 30u64..100_000) {
        let a = gamma_m_term(n, 3, false).unwrap();
        let e: Vec<f64> = (0..3).map(|k| a.diagnostics[&format!("term{k}_log10_envelope")]).collect();
        prop_assert!(e[0] > e[1] && e[1] > e[2]);
    }
}

#[test]
fn mu_coefficients_bounded() {
    let cfg = QuadratureConfig::default();
    for n in 0..=N_MAX_MU {
        let m = mu_n(n, &cfg).unwrap();
        assert!(m.value.abs() <= 2.0, "mu_{n} = {}", m.value);
    }
}

#[test]
fn alternating_mu_sum_vanishes() {
    let cfg = QuadratureConfig::default();
    let mut sum = 0.0;
    for k in 0..=40 {
        let m = mu_n(k, &cfg).unwrap().value;
        sum += if k % 2 == 0 { m } else { -m };
    }
    assert!(sum.abs() < 1e-6, "{sum}");
}

#[test]
fn error_estimates_are_honest() {
    let coarse = QuadratureConfig::default();
    let fine = QuadratureConfig {
        rel_tol: coarse.rel_tol / 2.0,
        ..coarse
    };
    for n in 0..=10 {
        let a = gamma_oracle(n, &coarse).unwrap();
        let b = gamma_oracle(n, &fine).unwrap();
        let err = a.diagnostics["error_estimate"];
        let diff = (a.value_f64().unwrap() - b.value_f64().unwrap()).abs();
        assert!(diff <= err, "n = {n}: moved {diff:e}, estimate {err:e}");
    }
}

#[test]
fn finite_and_tail_sums_agree() {
    let cfg = QuadratureConfig::default();
    for n in 0..=8 {
        let tail = gamma_oracle(n, &cfg).unwrap();
        let fin = gamma_finite_sum(n, &cfg).unwrap();
        let tol = tail.diagnostics["error_estimate"] + fin.error_estimate;
        let diff = (tail.value_f64().unwrap() - fin.value).abs();
        assert!(diff <= tol, "n = {n}: {diff:e} > {tol:e}");
    }
}

#[test]
fn oracle_matches_first_table() {
    let cfg = QuadratureConfig::default();
    for r in load_reference().unwrap().iter().filter(|r| r.n <= 20) {
        let got = gamma_oracle(r.n as usize, &cfg).unwrap().value;
        let rel = got.relative_error(&r.exact().unwrap()).unwrap();
        assert!(rel.abs() <= 1e-5, "n = {}: {rel:e}", r.n);
    }
}
