use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

// 15-point Kronrod nodes on [-1, 1] (non-negative half) with the embedded
// 7-point Gauss rule at the odd indices.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = (fc * WGK[7]).abs();
    for j in 0..7 {
        let dx = half * XGK[j];
        let (lo, hi) = (f(centre - dx), f(centre + dx));
        kronrod += WGK[j] * (lo + hi);
        abs_sum += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (lo + hi);
        }
    }
    let value = kronrod * half;
    let floor = 50.0 * f64::EPSILON * abs_sum * half.abs();
    Segment {
        a,
        b,
        value,
        error: ((kronrod - gauss) * half).abs().max(floor),
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub subdivisions: usize,
}

/// Globally adaptive 7/15 Gauss–Kronrod on `[a, b]`: the segment with the
/// largest `|K15 - G7|` is bisected until the summed estimate is `<= tol`.
pub fn adaptive_gauss_kronrod<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_subdivisions: usize,
) -> Result<Integral> {
    const INITIAL: usize = 8;
    let width = (b - a) / INITIAL as f64;
    let mut heap: BinaryHeap<Segment> = (0..INITIAL)
        .map(|i| {
            let lo = a + width * i as f64;
            let hi = if i + 1 == INITIAL { b } else { lo + width };
            gauss_kronrod(&mut f, lo, hi)
        })
        .collect();
    let mut subdivisions = 0;
    loop {
        let (value, error) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
        if !value.is_finite() {
            return Err(Error::Quadrature {
                estimate: f64::NAN,
                subdivisions,
            });
        }
        if error <= tol {
            return Ok(Integral {
                value,
                error,
                subdivisions,
            });
        }
        if subdivisions >= max_subdivisions {
            return Err(Error::Quadrature {
                estimate: error,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap never empties");
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(gauss_kronrod(&mut f, worst.a, mid));
        heap.push(gauss_kronrod(&mut f, mid, worst.b));
        subdivisions += 1;
    }
}

const MAX_SUBDIVISIONS: usize = 20_000;

/// Numerically integrates
///
/// ```text
/// H(k, ζ) = ∫_{ℝ^N} ∏_j e^{iζx_j} (1 + x_j²)^{-(N+k)} Δ(x)² dx
/// ```
///
/// (its real part; the imaginary part vanishes by symmetry) for
/// `N ∈ {1, 2}` to absolute tolerance `tol`.
///
/// With `x = tan u` the integrand becomes bounded on `(-π/2, π/2)^N`:
///
/// * `N = 1`: `cos(ζ tan u) cos^{2k} u`
/// * `N = 2`: `cos(ζ(tan u₁ + tan u₂)) sin²(u₁ - u₂) cos^{2k} u₁ cos^{2k} u₂`
///
/// and `N = 2` is computed as an iterated one-dimensional integral.
pub fn quad_h(k: u32, zeta: f64, n: u32, tol: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if !(tol > 0.0 && tol.is_finite()) || !zeta.is_finite() {
        return Err(Error::InvalidArgument(
            "need finite zeta and positive tol".into(),
        ));
    }
    let power = 2 * k as i32;
    match n {
        1 => {
            let f = |u: f64| (zeta * u.tan()).cos() * u.cos().powi(power);
            adaptive_gauss_kronrod(f, -FRAC_PI_2, FRAC_PI_2, tol, MAX_SUBDIVISIONS).map(|r| r.value)
        }
        2 => quad_h_two(power, zeta, tol),
        _ => Err(Error::InvalidArgument(format!(
            "quadrature oracle supports N = 1 or 2, got {n}"
        ))),
    }
}

fn quad_h_two(power: i32, zeta: f64, tol: f64) -> Result<f64> {
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    // the outer integrand is w(u₁)·inner(u₁), so the inner tolerance can
    // grow where w is small
    let outer = |u1: f64| {
        if failure.borrow().is_some() {
            return 0.0;
        }
        let weight = u1.cos().powi(power);
        if weight == 0.0 {
            return 0.0;
        }
        let t1 = u1.tan();
        let inner_tol = (tol / (4.0 * std::f64::consts::PI * weight)).min(1.0);
        let inner = |u2: f64| {
            let s = (u1 - u2).sin();
            (zeta * (t1 + u2.tan())).cos() * s * s * u2.cos().powi(power)
        };
        match adaptive_gauss_kronrod(inner, -FRAC_PI_2, FRAC_PI_2, inner_tol, MAX_SUBDIVISIONS) {
            Ok(r) => weight * r.value,
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                0.0
            }
        }
    };
    let result = adaptive_gauss_kronrod(outer, -FRAC_PI_2, FRAC_PI_2, tol / 2.0, MAX_SUBDIVISIONS);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    result.map(|r| r.value)
}
