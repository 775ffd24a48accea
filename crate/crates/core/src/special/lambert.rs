//! Principal branch of the Lambert W function for complex arguments.

use std::f64::consts::{E, PI};

use num_complex::Complex64;

use super::complex::principal_log;
use crate::error::{Error, Result};

pub const MAX_ITER: usize = 50;

/// Halley stops once `|Δw| <= STEP_TOL · (1 + |w|)`.
const STEP_TOL: f64 = 1e-15;

/// Residual bound required on success.
pub const RESIDUAL_TOL: f64 = 1e-13;

/// Arguments closer than this to -1/e are rejected.
pub const BRANCH_POINT_TOL: f64 = 1e-12;

const INV_E: f64 = 1.0 / E;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WResult {
    pub w: Complex64,
    pub iterations: usize,
    /// `|w·e^w - z| / max(|z|, 1)`
    pub residual: f64,
}

/// Principal branch `W_0(z)`, the solution of `w·e^w = z` with `W_0(0) = 0`
/// that is real for real `z > -1/e`.
///
/// Halley iteration from a short list of seeds: the branch-point series near
/// `-1/e`, the Maclaurin series `z - z² + 3z³/2` for small `|z|`, `log(1 + z)`
/// for moderate `|z|`, and `log z - log log z`. A converged `w` that falls outside the
/// principal range triggers a retry from the next seed.
pub fn lambert_w0(z: Complex64) -> Result<WResult> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain(
            "lambert_w0",
            format!("non-finite argument {z}"),
        ));
    }
    if z.re == 0.0 && z.im == 0.0 {
        return Ok(WResult {
            w: Complex64::new(0.0, 0.0),
            iterations: 0,
            residual: 0.0,
        });
    }
    let to_branch = (z + INV_E).norm();
    if to_branch <= BRANCH_POINT_TOL {
        return Err(Error::domain(
            "lambert_w0",
            format!("argument within {BRANCH_POINT_TOL:e} of the branch point -1/e"),
        ));
    }
    if z.im == 0.0 && z.re < -INV_E {
        return Err(Error::domain(
            "lambert_w0",
            format!("argument {} lies on the branch cut (-inf, -1/e]", z.re),
        ));
    }

    let mut seeds = Vec::with_capacity(4);
    if to_branch < 0.3 {
        seeds.push(branch_point_seed(z));
    }
    if z.norm() < 0.5 {
        seeds.push(z - z * z + 1.5 * z * z * z);
    }
    if z.norm() < 3.0 {
        seeds.push((1.0 + z).ln());
    }
    if let Some(seed) = asymptotic_seed(z) {
        seeds.push(seed);
    }
    if to_branch >= 0.3 {
        seeds.push(branch_point_seed(z));
    }

    let mut last_err = None;
    for seed in seeds {
        match halley(z, seed) {
            Ok(r) if in_principal_range(r.w) => return Ok(r),
            Ok(_) => continue,
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or(Error::Convergence {
        op: "lambert_w0",
        iterations: MAX_ITER,
        residual: f64::NAN,
    }))
}

/// `log z - log log z`
fn asymptotic_seed(z: Complex64) -> Option<Complex64> {
    let lz = principal_log(z).ok()?;
    Some(lz - principal_log(lz).ok()?)
}

/// Series in `p = sqrt(2(e·z + 1))` about the branch point.
fn branch_point_seed(z: Complex64) -> Complex64 {
    let p = (2.0 * (E * z + 1.0)).sqrt();
    -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
}

fn halley(z: Complex64, seed: Complex64) -> Result<WResult> {
    let mut w = seed;
    for it in 1..=MAX_ITER {
        let ew = w.exp();
        let f = w * ew - z;
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let dw = f / denom;
        if !(dw.re.is_finite() && dw.im.is_finite()) {
            break;
        }
        w -= dw;
        if dw.norm() <= STEP_TOL * (1.0 + w.norm()) {
            let residual = residual(w, z);
            if residual <= RESIDUAL_TOL {
                return Ok(WResult {
                    w,
                    iterations: it,
                    residual,
                });
            }
        }
    }
    Err(Error::Convergence {
        op: "lambert_w0",
        iterations: MAX_ITER,
        residual: residual(w, z),
    })
}

fn residual(w: Complex64, z: Complex64) -> f64 {
    (w * w.exp() - z).norm() / z.norm().max(1.0)
}

/// The image of the principal branch is bounded by the curve
/// `-η·cot η + iη`, `|η| < π`, and by the half-line `[-1, ∞)` on the axis.
fn in_principal_range(w: Complex64) -> bool {
    let y = w.im;
    if y.abs() >= PI {
        return false;
    }
    if y.abs() < 1e-12 {
        return w.re >= -1.0 - 1e-9;
    }
    w.re > -y / y.tan() - 1e-9
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trivial_values() {
        assert_eq!(lambert_w0(c(0.0, 0.0)).unwrap().w, c(0.0, 0.0));
        let r = lambert_w0(c(E, 0.0)).unwrap();
        assert_relative_eq!(r.w.re, 1.0, epsilon = 1e-15);
        assert!(r.w.im.abs() < 1e-15);
        // omega constant
        let r = lambert_w0(c(1.0, 0.0)).unwrap();
        assert_relative_eq!(r.w.re, 0.567_143_290_409_783_8, epsilon = 1e-15);
    }

    /// Independent route: the fixed point of `w ← log z − log w`, which is a
    /// contraction for large `|z|` on the principal branch.
    fn fixed_point_w(z: Complex64) -> Complex64 {
        let lz = z.ln();
        let mut w = lz - lz.ln();
        for _ in 0..500 {
            let next = lz - w.ln();
            if (next - w).norm() < 1e-16 * w.norm() {
                return next;
            }
            w = next;
        }
        w
    }

    #[test]
    fn saddle_input_for_n_137_matches_fixed_point() {
        let z = c(0.0, 139.0 / (2.0 * PI));
        let r = lambert_w0(z).unwrap();
        let fp = fixed_point_w(z);
        assert!((r.w - fp).norm() < 1e-14, "{} vs {}", r.w, fp);
        assert!(r.residual <= RESIDUAL_TOL);
        assert!(r.iterations <= MAX_ITER);
    }

    #[test]
    fn real_arguments_above_branch_point_give_real_w() {
        for &x in &[-0.3, -0.1, 0.5, 2.0, 10.0, 1e3] {
            let r = lambert_w0(c(x, 0.0)).unwrap();
            assert!(r.w.im.abs() < 1e-14, "W({x}) = {}", r.w);
            assert!(r.w.re >= -1.0);
        }
    }

    #[test]
    fn branch_point_and_cut_are_rejected() {
        assert!(matches!(
            lambert_w0(c(-INV_E, 0.0)),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            lambert_w0(c(-1.0, 0.0)),
            Err(Error::Domain { .. })
        ));
        // just off the cut is fine
        let r = lambert_w0(c(-1.0, 1e-6)).unwrap();
        assert!(r.w.im > 0.0 && r.w.im < PI);
    }

    #[test]
    fn near_branch_point_converges() {
        let z = c(-INV_E + 1e-8, 0.0);
        let r = lambert_w0(z).unwrap();
        assert!(r.w.re > -1.0 && r.w.re < -0.99);
    }

    #[test]
    fn conjugate_symmetry() {
        for &(re, im) in &[(0.3, 2.0), (-2.0, 0.5), (50.0, -40.0)] {
            let a = lambert_w0(c(re, im)).unwrap().w;
            let b = lambert_w0(c(re, -im)).unwrap().w;
            assert!((a - b.conj()).norm() < 1e-13);
        }
    }
}
