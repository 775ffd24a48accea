//! Even-index Bernoulli numbers as exact rationals.

/// `(numerator, denominator)` of `B_{2k}` for `k = 0..=15`.
const EVEN_BERNOULLI: [(f64, f64); 16] = [
    (1.0, 1.0),
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
];

/// Largest `n` for which [`bernoulli`] is tabulated.
pub const MAX_TABULATED: usize = 30;

/// `B_n` with the `B_1 = -1/2` convention, for `n <= 30`.
pub fn bernoulli(n: usize) -> f64 {
    assert!(n <= MAX_TABULATED, "B_{n} is not tabulated");
    match n {
        1 => -0.5,
        n if n % 2 == 1 => 0.0,
        n => {
            let (num, den) = EVEN_BERNOULLI[n / 2];
            num / den
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Recurrence Σ_{k<m} C(m+1, k) B_k = -(m+1) B_m, i.e. Σ_{k<=m} C(m+1,k) B_k = 0.
    #[test]
    fn table_satisfies_defining_recurrence() {
        for m in 1..=MAX_TABULATED {
            let mut binom = 1.0;
            let mut sum = 0.0;
            let mut scale: f64 = 0.0;
            for k in 0..=m {
                let term = binom * bernoulli(k);
                sum += term;
                scale = scale.max(term.abs());
                binom = binom * (m + 1 - k) as f64 / (k + 1) as f64;
            }
            assert!(sum.abs() <= 1e-13 * scale, "m = {m}: {sum}");
        }
    }
}
