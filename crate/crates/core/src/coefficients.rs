//! The partition sums `C_N(p, k)` and `C(p, k)` that drive every moment
//! formula, their closed forms for `k ∈ {1, 2}`, the Tannery bound on
//! `|C_N(p, k)|`, and the finite identities they satisfy.
//!
//! Everything here is exact rational arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partitions::{partitions_bounded, partitions_of, Partition};
use crate::rational::{binomial, factorial, from_bigint, int, pow, ratio, Rational};

/// Identifies one coefficient: `C_N(p, k)` when `n` is present, `C(p, k)`
/// otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoeffKey {
    pub p: u32,
    pub k: u32,
    pub n: Option<u32>,
}

impl CoeffKey {
    pub fn finite(p: u32, k: u32, n: u32) -> Self {
        Self { p, k, n: Some(n) }
    }

    pub fn limit(p: u32, k: u32) -> Self {
        Self { p, k, n: None }
    }

    pub fn value(&self) -> Rational {
        match self.n {
            Some(n) => coeff_cn(self.p, self.k, n),
            None => coeff_c(self.p, self.k),
        }
    }
}

fn summand(lambda: &Partition, k: i64) -> Rational {
    let hook = from_bigint(lambda.hook_product());
    lambda.pochhammer(&int(k)) / (lambda.pochhammer(&int(2 * k)) * &hook * &hook)
}

/// `C_N(p, k) = (-2)^p Σ_{λ ⊢_k p} [k]_λ [-N]_λ / ([2k]_λ h_λ²)`.
///
/// Partitions with `λ₁ > N` are skipped since `[-N]_λ` vanishes on them, so
/// the sum is empty (and the result zero) once `p > kN`.
pub fn coeff_cn(p: u32, k: u32, n: u32) -> Rational {
    assert!(k >= 1 && n >= 1, "coeff_cn needs k, N >= 1");
    let minus_n = int(-i64::from(n));
    let sum = partitions_bounded(p, k, n)
        .iter()
        .fold(Rational::zero(), |acc, lambda| {
            acc + summand(lambda, k.into()) * lambda.pochhammer(&minus_n)
        });
    pow(&int(-2), p) * sum
}

/// `C(p, k) = 2^p Σ_{λ ⊢_k p} [k]_λ / ([2k]_λ h_λ²)`, the leading
/// coefficient of `C_N(p, k)` in `N`.
pub fn coeff_c(p: u32, k: u32) -> Rational {
    assert!(k >= 1, "coeff_c needs k >= 1");
    let sum = partitions_of(p, k)
        .iter()
        .fold(Rational::zero(), |acc, lambda| {
            acc + summand(lambda, k.into())
        });
    pow(&int(2), p) * sum
}

/// Closed forms of `C(p, k)`:
///
/// * `k = 1`: `2^p / (p! (p+1)!)`
/// * `k = 2`: `12 (2p+4)! 2^p / (p! (p+2)! (p+3)! (p+4)!)`
pub fn coeff_c_closed(p: u32, k: u32) -> Result<Rational> {
    let two_p = from_bigint(BigInt::one() << p);
    match k {
        1 => Ok(two_p / from_bigint(factorial(p) * factorial(p + 1))),
        2 => {
            let num = factorial(2 * p + 4) * 12;
            let den = factorial(p) * factorial(p + 2) * factorial(p + 3) * factorial(p + 4);
            Ok(two_p * Rational::new(num, den))
        }
        other => Err(Error::NoClosedForm(other)),
    }
}

/// `C(p, k)` through the closed form when one exists, otherwise by
/// partition enumeration.
pub fn coeff_c_fast(p: u32, k: u32) -> Rational {
    coeff_c_closed(p, k).unwrap_or_else(|_| coeff_c(p, k))
}

/// Upper bound on `|C_N(p, k)|`, valid for `p >= 2`:
///
/// `(N^p / p!) (1 + k/N)^p (2k)^p Γ(2k) / Γ(2k + ⌊p/k⌋)`.
pub fn coeff_tail_bound(p: u32, k: u32, n: u32) -> Result<Rational> {
    if p < 2 {
        return Err(Error::BoundHypothesis(p));
    }
    if k == 0 || n == 0 {
        return Err(Error::InvalidArgument("k and N must be positive".into()));
    }
    // (N^p/p!)(1 + k/N)^p = (N + k)^p / p!
    let shifted = pow(&int(i64::from(n + k)), p) / from_bigint(factorial(p));
    let growth = pow(&int(2 * i64::from(k)), p);
    let gamma_ratio = Rational::new(factorial(2 * k - 1), factorial(2 * k - 1 + p / k));
    Ok(shifted * growth * gamma_ratio)
}

/// `Σ_{p=0}^{2h} binom(2h, p) C_N(p, k) p! / (-N)^p`, which vanishes for odd
/// `2h` with `0 < h <= k`.
pub fn identity_91_residual(two_h: u32, k: u32, n: u32) -> Result<Rational> {
    if two_h.is_multiple_of(2) {
        return Err(Error::WrongParity(two_h));
    }
    if two_h > 2 * k {
        return Err(Error::Inadmissible { two_h, k });
    }
    let minus_n = int(-i64::from(n));
    let total = (0..=two_h).fold(Rational::zero(), |acc, p| {
        let weight = from_bigint(binomial(two_h.into(), p.into()) * factorial(p));
        acc + weight * coeff_cn(p, k, n) / pow(&minus_n, p)
    });
    Ok(total)
}

/// `Σ_{λ ⊢ p} [k]_λ / h_λ²` over all partitions of `p`; equals `k^p / p!`.
pub fn hook_content_sum(p: u32, k: u32) -> Rational {
    let k = int(k.into());
    partitions_of(p, p.max(1))
        .iter()
        .fold(Rational::zero(), |acc, lambda| {
            let hook = from_bigint(lambda.hook_product());
            acc + lambda.pochhammer(&k) / (&hook * &hook)
        })
}

/// `Σ_{ℓ=0}^{n} (-1)^ℓ binom(p, n-ℓ) binom(p-n+ℓ-1, ℓ)`, equal to one for
/// every `p > n >= 0`.
pub fn appendix_b1_sum(p: u32, n: u32) -> Result<BigInt> {
    if p <= n {
        return Err(Error::InvalidArgument(format!(
            "binomial sum needs p > n, got p = {p}, n = {n}"
        )));
    }
    let (p, n) = (i64::from(p), i64::from(n));
    let total = (0..=n).fold(BigInt::zero(), |acc, l| {
        let term = binomial(p, n - l) * binomial(p - n + l - 1, l);
        if l % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    });
    Ok(total)
}

/// `Σ_{x=0}^{p+1} (p-2x+1)² / (x! (x+2)! (p-x+3)! (p-x+1)!)`.
pub fn appendix_b2_sum(p: u32) -> Rational {
    (0..=p + 1).fold(Rational::zero(), |acc, x| {
        let centre = i64::from(p) - 2 * i64::from(x) + 1;
        let den = factorial(x) * factorial(x + 2) * factorial(p + 3 - x) * factorial(p + 1 - x);
        acc + ratio(centre * centre, 1) / from_bigint(den)
    })
}

/// Closed form of [`appendix_b2_sum`]: `2 binom(2p+4, p) / ((p+2)! (p+3)!)`.
pub fn appendix_b2_closed(p: u32) -> Rational {
    let num = binomial(2 * i64::from(p) + 4, p.into()) * 2;
    Rational::new(num, factorial(p + 2) * factorial(p + 3))
}

/// `C_N(p, k)` through the transposed sum
/// `2^p Σ [-k]_λ [N]_λ / ([-2k]_λ h_λ²)` over `λ ⊢ p` with `λ₁ <= k` and
/// `ℓ(λ) <= N`.
///
/// Independent of [`coeff_cn`] apart from sharing the partition primitives;
/// used to cross-check it.
pub fn coeff_cn_transposed(p: u32, k: u32, n: u32) -> Rational {
    let (mk, m2k, big_n) = (int(-i64::from(k)), int(-2 * i64::from(k)), int(n.into()));
    let sum = partitions_bounded(p, n, k)
        .iter()
        .fold(Rational::zero(), |acc, lambda| {
            let hook = from_bigint(lambda.hook_product());
            acc + lambda.pochhammer(&mk) * lambda.pochhammer(&big_n)
                / (lambda.pochhammer(&m2k) * &hook * &hook)
        });
    pow(&int(2), p) * sum
}

/// `|C_N(p, k)| <= bound` as an exact comparison.
pub fn bound_dominates(p: u32, k: u32, n: u32) -> Result<bool> {
    Ok(coeff_cn(p, k, n).abs() <= coeff_tail_bound(p, k, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coeff_cn_examples() {
        for n in 1..8 {
            assert_eq!(coeff_cn(1, 1, n), int(n.into()));
            for k in 1..4 {
                assert_eq!(coeff_cn(0, k, n), int(1));
            }
        }
        assert_eq!(coeff_cn(2, 1, 3), int(2));
        // (N² - N)/3 for the single row (2)
        for n in 1..8i64 {
            assert_eq!(coeff_cn(2, 1, n as u32), ratio(n * n - n, 3));
        }
    }

    #[test]
    fn coeff_cn_zero_beyond_kn() {
        assert!(coeff_cn(4, 1, 3).is_zero());
        assert!(coeff_cn(7, 2, 3).is_zero());
        assert!(!coeff_cn(6, 2, 3).is_zero());
    }

    #[test]
    fn coeff_c_examples() {
        assert_eq!(coeff_c(2, 1), ratio(1, 3));
        assert_eq!(coeff_c(1, 2), int(1));
        for k in 1..5 {
            assert_eq!(coeff_c(0, k), int(1));
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(coeff_c_closed(2, 1).unwrap(), ratio(1, 3));
        assert_eq!(coeff_c_closed(1, 2).unwrap(), int(1));
        assert_eq!(coeff_c_closed(0, 1).unwrap(), int(1));
        assert_eq!(coeff_c_closed(3, 3), Err(Error::NoClosedForm(3)));
    }

    #[test]
    fn tail_bound_examples() {
        // (9/2)(4/3)^2 * 4^2... evaluated by hand: 16/3
        assert_eq!(coeff_tail_bound(2, 1, 3).unwrap(), ratio(16, 3));
        assert!(coeff_tail_bound(2, 1, 3).unwrap() >= coeff_cn(2, 1, 3));
        assert!(coeff_tail_bound(2, 1, 1).unwrap() >= int(0));
        assert!(coeff_cn(2, 1, 1).is_zero());
        assert!(bound_dominates(6, 2, 4).unwrap());
        assert_eq!(coeff_tail_bound(1, 2, 4), Err(Error::BoundHypothesis(1)));
        assert_eq!(coeff_tail_bound(0, 2, 4), Err(Error::BoundHypothesis(0)));
    }

    #[test]
    fn identity_91_examples() {
        for n in 1..12 {
            assert!(identity_91_residual(1, 1, n).unwrap().is_zero());
        }
        assert!(identity_91_residual(1, 2, 5).unwrap().is_zero());
        assert!(identity_91_residual(3, 2, 4).unwrap().is_zero());
        assert_eq!(identity_91_residual(2, 2, 4), Err(Error::WrongParity(2)));
        assert!(identity_91_residual(5, 2, 4).is_err());
    }

    #[test]
    fn hook_content_examples() {
        assert_eq!(hook_content_sum(2, 1), ratio(1, 2));
        assert_eq!(hook_content_sum(0, 3), int(1));
        assert_eq!(hook_content_sum(3, 2), ratio(4, 3));
    }

    #[test]
    fn appendix_b_examples() {
        assert_eq!(appendix_b1_sum(5, 2).unwrap(), BigInt::one());
        assert_eq!(appendix_b1_sum(1, 0).unwrap(), BigInt::one());
        assert_eq!(appendix_b1_sum(7, 4).unwrap(), BigInt::one());
        assert!(appendix_b1_sum(3, 3).is_err());
        assert_eq!(appendix_b2_sum(0), ratio(1, 6));
        assert_eq!(appendix_b2_closed(0), ratio(1, 6));
        assert_eq!(appendix_b2_sum(1), ratio(1, 12));
        assert_eq!(appendix_b2_sum(4), appendix_b2_closed(4));
    }

    #[test]
    fn transposed_route_small() {
        for k in 1..4 {
            for n in 1..5 {
                for p in 0..=8 {
                    assert_eq!(coeff_cn(p, k, n), coeff_cn_transposed(p, k, n));
                }
            }
        }
    }

    #[test]
    fn coeff_key_dispatch() {
        assert_eq!(CoeffKey::finite(2, 1, 3).value(), int(2));
        assert_eq!(CoeffKey::limit(2, 1).value(), ratio(1, 3));
    }
}
