//! Finite-`N` joint moments `F̃_N(h, k)` and their large-`N` limits
//! `F(h, k) = lim F̃_N(h, k) / N^{k²+2h}`.
//!
//! Integer `h` follows a partition-sum formula; half-integer `h`
//! uses the Laguerre/hypergeometric route and produces rational multiples
//! of `1/π`, carried exactly by [`ExactScalar`].

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::coefficients::{coeff_c_fast, coeff_cn};
use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, from_bigint, int, pow, to_f64, Rational};

/// The pair `(h, k)` with `h = two_h / 2`, admissible when `2k + 1 > two_h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MomentOrder {
    two_h: u32,
    k: u32,
}

impl MomentOrder {
    pub fn new(two_h: u32, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be positive".into()));
        }
        if 2 * k < two_h {
            return Err(Error::Inadmissible { two_h, k });
        }
        Ok(Self { two_h, k })
    }

    pub fn two_h(&self) -> u32 {
        self.two_h
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn is_integer_h(&self) -> bool {
        self.two_h.is_multiple_of(2)
    }

    /// The exponent `k² + 2h` that normalises the large-`N` limit.
    pub fn scaling_exponent(&self) -> f64 {
        f64::from(self.k * self.k + self.two_h)
    }
}

/// An exact real number `q · π^pi_exp` with `pi_exp ∈ {0, -1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactScalar {
    pub q: Rational,
    pub pi_exp: i8,
}

impl ExactScalar {
    pub fn rational(q: Rational) -> Self {
        Self { q, pi_exp: 0 }
    }

    pub fn over_pi(q: Rational) -> Self {
        Self { q, pi_exp: -1 }
    }

    pub fn to_f64(&self) -> f64 {
        let q = to_f64(&self.q);
        if self.pi_exp == 0 {
            q
        } else {
            q / PI
        }
    }

    /// Scalar multiple with the same power of `π`.
    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            q: &self.q * s,
            pi_exp: self.pi_exp,
        }
    }
}

impl fmt::Display for ExactScalar {
    /// `3/4`, `2/π`, `248/(27π)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pi_exp == 0 {
            return write!(f, "{}", self.q);
        }
        if self.q.denom().is_one() {
            write!(f, "{}/π", self.q.numer())
        } else {
            write!(f, "{}/({}π)", self.q.numer(), self.q.denom())
        }
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("not an exact scalar: {s:?}"));
        let parse_int = |t: &str| BigInt::from_str(t.trim()).map_err(|_| bad());
        if let Some(head) = s.strip_suffix("π)") {
            let (num, den) = head.split_once("/(").ok_or_else(bad)?;
            return Ok(Self::over_pi(Rational::new(
                parse_int(num)?,
                parse_int(den)?,
            )));
        }
        if let Some(num) = s.strip_suffix("/π") {
            return Ok(Self::over_pi(from_bigint(parse_int(num)?)));
        }
        Rational::from_str(s.trim())
            .map(Self::rational)
            .map_err(|_| bad())
    }
}

/// Truncated evaluation of a convergent series for a limiting moment.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitResult {
    pub value: f64,
    /// Upper bound on `|value - F(h, k)|` from the discarded tail.
    pub tail_bound: f64,
    /// Index `P` of the last series term kept; zero for exact limits.
    pub terms_used: usize,
    /// The exact value of the kept partial sum.
    pub truncated: ExactScalar,
}

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// `F̃_N(0, k) = ∏_{j=1}^{N} Γ(j) Γ(j+2k) / Γ(j+k)²`.
pub fn keating_snaith(n: u32, k: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, j| {
        let num = factorial(j - 1) * factorial(j + 2 * k - 1);
        let den = factorial(j + k - 1);
        acc * Rational::new(num, &den * &den)
    })
}

/// `F̃_N(h, k)` for integer `h >= 1` and `k >= h`.
pub fn moment_integer_h(n: u32, h: u32, k: u32) -> Result<Rational> {
    if h == 0 {
        return Err(Error::InvalidArgument(
            "h must be positive; use keating_snaith for h = 0".into(),
        ));
    }
    MomentOrder::new(2 * h, k)?;
    let two_h = 2 * h;
    let minus_n = int(-i64::from(n));
    let sum = (0..=two_h).fold(Rational::zero(), |acc, p| {
        let weight = Rational::new(factorial(two_h), factorial(two_h - p));
        acc + weight * pow(&minus_n, two_h - p) * coeff_cn(p, k, n)
    });
    let prefactor = sign(h % 2 == 1) / from_bigint(BigInt::one() << two_h);
    Ok(prefactor * keating_snaith(n, k) * sum)
}

/// `F̃_N(h, k)` for half-integer `h = two_h / 2`, as a rational multiple of
/// `1/π`.
pub fn moment_half_h(n: u32, two_h: u32, k: u32) -> Result<ExactScalar> {
    if two_h.is_multiple_of(2) {
        return Err(Error::WrongParity(two_h));
    }
    MomentOrder::new(two_h, k)?;
    let minus_n = int(-i64::from(n));
    let big_n = int(n.into());
    let coeffs: Vec<Rational> = (0..=k * n).map(|p| coeff_cn(p, k, n)).collect();
    let zero = Rational::zero();
    let coeff = |p: u32| coeffs.get(p as usize).unwrap_or(&zero);

    let mut inner = Rational::zero();
    for p in 1..=two_h {
        let c = coeff(p);
        if c.is_zero() {
            continue;
        }
        let harmonic = (1..=p).fold(Rational::zero(), |acc, l| {
            let b = from_bigint(binomial(two_h.into(), (p - l).into()));
            acc + b * sign(l % 2 == 1) / int(l.into())
        });
        inner += harmonic * pow(&minus_n, two_h - p) * from_bigint(factorial(p)) * c;
    }
    let mut tail = Rational::zero();
    for p in two_h + 1..=k * n {
        let w = from_bigint(factorial(two_h) * factorial(p - two_h - 1));
        tail += w * coeff(p) / pow(&big_n, p - two_h);
    }
    Ok(ExactScalar::over_pi(
        half_prefactor(two_h) * keating_snaith(n, k) * (inner + tail),
    ))
}

/// `2 (-1)^{h+1/2} / 2^{2h}`, the rational part of the half-integer
/// prefactor.
fn half_prefactor(two_h: u32) -> Rational {
    sign(two_h.div_ceil(2) % 2 == 1) * int(2) / from_bigint(BigInt::one() << two_h)
}

/// `F̃_N(h, k)` for any admissible order.
pub fn moment(n: u32, order: MomentOrder) -> Result<ExactScalar> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    match order.two_h() {
        0 => Ok(ExactScalar::rational(keating_snaith(n, order.k()))),
        t if t % 2 == 0 => moment_integer_h(n, t / 2, order.k()).map(ExactScalar::rational),
        t => moment_half_h(n, t, order.k()),
    }
}

/// `F̃_N(1/2, 1) = (2/π) Σ_{n=0}^{N-1} binom(N+2, n+3) 2^n / N^{n+1}`.
pub fn appendix_a_closed(n: u32) -> ExactScalar {
    let big_n = int(n.into());
    let sum = (0..n).fold(Rational::zero(), |acc, j| {
        let b = from_bigint(binomial(i64::from(n) + 2, i64::from(j) + 3) << j);
        acc + b / pow(&big_n, j + 1)
    });
    ExactScalar::over_pi(sum * int(2))
}

/// `F(0, k) = ∏_{j=1}^{k} Γ(j) / Γ(k+j)`.
pub fn limit_f0(k: u32) -> Rational {
    (1..=k).fold(Rational::one(), |acc, j| {
        acc * Rational::new(factorial(j - 1), factorial(k + j - 1))
    })
}

/// `F(h, k)` for integer `h >= 1`, exact.
pub fn limit_f_integer_h(h: u32, k: u32) -> Result<Rational> {
    if h == 0 {
        return Err(Error::InvalidArgument(
            "h must be positive; use limit_f0 for h = 0".into(),
        ));
    }
    MomentOrder::new(2 * h, k)?;
    let two_h = 2 * h;
    let sum = (0..=two_h).fold(Rational::zero(), |acc, p| {
        let weight = Rational::new(factorial(two_h), factorial(two_h - p));
        acc + weight * sign(p % 2 == 1) * coeff_c_fast(p, k)
    });
    let prefactor = sign(h % 2 == 1) / from_bigint(BigInt::one() << two_h);
    Ok(prefactor * limit_f0(k) * sum)
}

const MAX_LIMIT_TERMS: u32 = 600;

/// `F(h, k)` for half-integer `h = two_h / 2`, truncating the infinite sum.
///
/// With `t_p = (2h)! (p-2h-1)! C(p, k)`, the sum stops at the first
/// `P >= 2h + 2k + 4` where `t_P < tol/2` and `t_P < t_{P-1}/2`; the
/// discarded tail is then majorised by the geometric bound `2 t_P`.
/// Partial sums are accumulated exactly.
pub fn limit_f_half_h(two_h: u32, k: u32, tol: f64) -> Result<LimitResult> {
    if two_h.is_multiple_of(2) {
        return Err(Error::WrongParity(two_h));
    }
    MomentOrder::new(two_h, k)?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }

    let mut head = Rational::zero();
    for p in 1..=two_h {
        let c = coeff_c_fast(p, k) * from_bigint(factorial(p));
        for l in 1..=p {
            let b = from_bigint(binomial(two_h.into(), (p - l).into()));
            head += &b * sign((l + two_h - p) % 2 == 1) * &c / int(l.into());
        }
    }

    let first = two_h + 1;
    let min_stop = two_h + 2 * k + 4;
    let mut tail = Rational::zero();
    let mut previous = f64::INFINITY;
    let mut stop = None;
    for p in first..=two_h + MAX_LIMIT_TERMS {
        let term = from_bigint(factorial(two_h) * factorial(p - first)) * coeff_c_fast(p, k);
        let t = to_f64(&term);
        tail += term;
        if p >= min_stop && t < tol / 2.0 && t < previous / 2.0 {
            stop = Some((p, t));
            break;
        }
        previous = t;
    }
    let Some((last, last_term)) = stop else {
        return Err(Error::ToleranceUnreachable {
            tol,
            cap: MAX_LIMIT_TERMS as usize,
        });
    };

    let prefactor = half_prefactor(two_h) * limit_f0(k);
    let scale = to_f64(&prefactor.abs()) / PI;
    let truncated = ExactScalar::over_pi(prefactor * (head + tail));
    Ok(LimitResult {
        value: truncated.to_f64(),
        tail_bound: scale * 2.0 * last_term,
        terms_used: last as usize,
        truncated,
    })
}

/// `F(h, k)` for any admissible order; integer `h` is exact with zero tail.
pub fn limit(order: MomentOrder, tol: f64) -> Result<LimitResult> {
    let exact = |q: Rational| {
        let truncated = ExactScalar::rational(q);
        LimitResult {
            value: truncated.to_f64(),
            tail_bound: 0.0,
            terms_used: 0,
            truncated,
        }
    };
    match order.two_h() {
        0 => Ok(exact(limit_f0(order.k()))),
        t if t % 2 == 0 => limit_f_integer_h(t / 2, order.k()).map(exact),
        t => limit_f_half_h(t, order.k(), tol),
    }
}

/// `(e² - 5) / (4π)`, the limit `F(1/2, 1)`.
pub fn f_half_one_closed() -> f64 {
    (std::f64::consts::E.powi(2) - 5.0) / (4.0 * PI)
}
