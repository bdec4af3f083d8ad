//! Exact arithmetic helpers shared by the combinatorial modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * j)
}

/// `binom(n, r)` for integer `n` (possibly negative) and `r >= 0`, using the
/// falling-factorial definition. Zero when `r < 0`.
pub fn binomial(n: i64, r: i64) -> BigInt {
    if r < 0 {
        return BigInt::zero();
    }
    if n >= 0 && r > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..r {
        num *= n - j;
        den *= j + 1;
    }
    num / den
}

pub fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

/// Determinant of a square matrix by Gaussian elimination over the
/// rationals. The empty matrix has determinant one.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &p;
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * y;
            }
        }
    }
    det
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}
