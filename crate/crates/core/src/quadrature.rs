//! Globally adaptive Gauss–Kronrod (7/15) quadrature on finite intervals.
//!
//! The interval with the largest error estimate is bisected until the total
//! estimate meets the tolerance or every remaining interval has hit the
//! depth limit. Final sums run over intervals in left-to-right order so the
//! result does not depend on heap ordering.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Upper bound on the number of live subintervals.
const MAX_INTERVALS: usize = 20_000;

/// Values the integrator can accumulate.
pub trait QuadValue:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_depth: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub abs_error: f64,
    /// `∫|f|`, the scale against which rounding error is judged.
    pub l1: f64,
    pub evaluations: usize,
    pub converged: bool,
}

struct Segment<T> {
    a: f64,
    b: f64,
    depth: u32,
    value: T,
    error: f64,
    l1: f64,
    /// rounding floor; bisecting a segment already at it gains nothing
    floor: f64,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gauss_kronrod<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64, depth: u32) -> Segment<T> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut l1 = fc.magnitude() * WGK[7];
    let mut fvals = [(T::default(), T::default()); 7];
    for (j, fv) in fvals.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod = kronrod + (f1 + f2) * WGK[j];
        l1 += (f1.magnitude() + f2.magnitude()) * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + (f1 + f2) * WG[j / 2];
        }
        *fv = (f1, f2);
    }
    // ∫|f - mean|, the QUADPACK "resasc" used to scale the error heuristic
    let mean = kronrod * 0.5;
    let mut asc = (fc - mean).magnitude() * WGK[7];
    for (j, (f1, f2)) in fvals.iter().enumerate() {
        asc += ((*f1 - mean).magnitude() + (*f2 - mean).magnitude()) * WGK[j];
    }
    let kronrod = kronrod * half;
    let gauss = gauss * half;
    let l1 = l1 * half.abs();
    let asc = asc * half.abs();

    let mut error = (kronrod - gauss).magnitude();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let floor = 10.0 * f64::EPSILON * l1;
    if floor > error {
        error = floor;
    }
    Segment {
        a,
        b,
        depth,
        value: kronrod,
        error,
        l1,
        floor,
    }
}

/// Integrates `f` over the union of consecutive `breakpoints` intervals.
pub fn integrate<T, F>(f: F, breakpoints: &[f64], tol: Tolerance) -> QuadResult<T>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    assert!(breakpoints.len() >= 2, "need at least one interval");
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in breakpoints.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        heap.push(gauss_kronrod(&f, w[0], w[1], 0));
        evaluations += 15;
    }
    let mut finished: Vec<Segment<T>> = Vec::new();

    loop {
        let (total, err) = totals(heap.iter().chain(finished.iter()));
        // rounding noise in |K - G| can keep single tiny segments above their
        // own floor forever, so also stop on the floor of the whole integral
        let floor: f64 = heap.iter().chain(finished.iter()).map(|s| s.floor).sum();
        if err <= tol.abs.max(tol.rel * total.magnitude()).max(2.0 * floor) {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        if worst.depth >= tol.max_depth
            || worst.error <= worst.floor
            || heap.len() + finished.len() >= MAX_INTERVALS
        {
            finished.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(gauss_kronrod(&f, worst.a, mid, worst.depth + 1));
        heap.push(gauss_kronrod(&f, mid, worst.b, worst.depth + 1));
        evaluations += 30;
    }

    let mut all: Vec<Segment<T>> = heap.into_vec();
    all.extend(finished);
    all.sort_by(|x, y| x.a.total_cmp(&y.a));
    let (value, abs_error) = totals(all.iter());
    QuadResult {
        value,
        abs_error,
        l1: all.iter().map(|s| s.l1).sum(),
        evaluations,
        converged: abs_error <= tol.abs.max(tol.rel * value.magnitude()),
    }
}

fn totals<'a, T: QuadValue + 'a>(segs: impl Iterator<Item = &'a Segment<T>>) -> (T, f64) {
    segs.fold((T::default(), 0.0), |(v, e), s| (v + s.value, e + s.error))
}
