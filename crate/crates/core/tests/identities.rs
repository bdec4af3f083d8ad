use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use cue_moments::coefficients::{coeff_c, coeff_cn};
use cue_moments::moments::{
    keating_snaith, limit_f_half_h, limit_f_integer_h, moment, moment_half_h, moment_integer_h,
    ExactScalar,
};
use cue_moments::partitions::{partitions_bounded, partitions_of, Partition};
use cue_moments::specfun::laguerre;
use cue_moments::{MomentOrder, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * i)
}

/// Partitions of `p` into at most `parts` parts, each at most `largest`.
fn count_bounded(
    p: u32,
    parts: u32,
    largest: u32,
    memo: &mut HashMap<(u32, u32, u32), u64>,
) -> u64 {
    if p == 0 {
        return 1;
    }
    if parts == 0 || largest == 0 {
        return 0;
    }
    if let Some(&c) = memo.get(&(p, parts, largest)) {
        return c;
    }
    let c = (1..=largest.min(p))
        .map(|first| count_bounded(p - first, parts - 1, first, memo))
        .sum();
    memo.insert((p, parts, largest), c);
    c
}

#[test]
fn partition_counts_match_recursion() {
    let mut memo = HashMap::new();
    assert_eq!(count_bounded(40, 40, 40, &mut memo), 37_338);
    for p in 0..=24 {
        for parts in 1..=6 {
            for largest in 1..=8 {
                let n = partitions_bounded(p, parts, largest).len() as u64;
                assert_eq!(
                    n,
                    count_bounded(p, parts, largest, &mut memo),
                    "p={p} {parts} {largest}"
                );
            }
        }
        assert_eq!(
            partitions_of(p, p.max(1)).len() as u64,
            count_bounded(p, p.max(1), p.max(1), &mut memo)
        );
    }
}

/// Standard Young tableaux of shape λ, by removing corners.
fn syt(parts: &[u32], memo: &mut HashMap<Vec<u32>, BigInt>) -> BigInt {
    if parts.iter().all(|&x| x == 0) {
        return BigInt::one();
    }
    if let Some(v) = memo.get(parts) {
        return v.clone();
    }
    let mut total = BigInt::zero();
    for i in 0..parts.len() {
        let next = parts.get(i + 1).copied().unwrap_or(0);
        if parts[i] > next {
            let mut smaller = parts.to_vec();
            smaller[i] -= 1;
            total += syt(&smaller, memo);
        }
    }
    memo.insert(parts.to_vec(), total.clone());
    total
}

#[test]
fn hook_product_counts_tableaux() {
    let mut memo = HashMap::new();
    for p in 1..=12u32 {
        for lambda in partitions_of(p, p) {
            let f = syt(lambda.parts(), &mut memo);
            assert_eq!(factorial(p.into()), f * lambda.hook_product(), "{lambda}");
        }
    }
}

#[test]
fn sum_of_squared_dimensions() {
    let mut memo = HashMap::new();
    for p in 1..=10u32 {
        let total: BigInt = partitions_of(p, p)
            .iter()
            .map(|l| {
                let f = syt(l.parts(), &mut memo);
                &f * &f
            })
            .sum();
        assert_eq!(total, factorial(p.into()));
    }
}

#[test]
fn laguerre_three_term_recurrence() {
    for alpha in -2..=5i64 {
        for n in 1..=11u32 {
            if i64::from(n) + alpha < 1 {
                continue;
            }
            let (Ok(prev), Ok(cur), Ok(next)) = (
                laguerre(n - 1, alpha),
                laguerre(n, alpha),
                laguerre(n + 1, alpha),
            ) else {
                continue;
            };
            let nn = i64::from(n);
            for x in [q(0, 1), q(1, 3), q(-5, 2), q(7, 1)] {
                let lhs = q(nn + 1, 1) * next.eval(&x);
                let rhs = (q(2 * nn + 1, 1) + q(alpha, 1) - &x) * cur.eval(&x)
                    - q(nn + alpha, 1) * prev.eval(&x);
                assert_eq!(lhs, rhs, "n={n} alpha={alpha} x={x}");
            }
        }
    }
}

fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut i = n;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    acc
}

/// `F_1(h, k)` as a Beta integral over a uniform phase.
fn moment_n1(two_h: u32, k: u32) -> ExactScalar {
    let a = i64::from(2 * k - two_h);
    let b = i64::from(two_h);
    let beta = Rational::new(
        double_factorial(a - 1) * double_factorial(b - 1),
        double_factorial(a + b),
    );
    let pow2 = Rational::from_integer(BigInt::from(2).pow(2 * k - two_h));
    if two_h.is_multiple_of(2) {
        ExactScalar::rational(pow2 * beta)
    } else {
        ExactScalar::over_pi(pow2 * beta * q(2, 1))
    }
}

#[test]
fn one_by_one_moments() {
    for k in 1..=6 {
        for two_h in 0..=2 * k {
            let order = MomentOrder::new(two_h, k).unwrap();
            assert_eq!(
                moment(1, order).unwrap(),
                moment_n1(two_h, k),
                "2h={two_h} k={k}"
            );
        }
    }
}

#[test]
fn keating_snaith_special_cases() {
    for n in 1..=15i64 {
        assert_eq!(keating_snaith(n as u32, 1), q(n + 1, 1));
        assert_eq!(
            keating_snaith(n as u32, 2),
            q((n + 1) * (n + 2) * (n + 2) * (n + 3), 12)
        );
    }
    for k in 1..=8u32 {
        let binom = factorial(2 * u64::from(k)) / (factorial(k.into()) * factorial(k.into()));
        assert_eq!(keating_snaith(1, k), Rational::from_integer(binom));
    }
}

#[test]
fn integer_h_moment_examples() {
    assert_eq!(moment_integer_h(1, 1, 1).unwrap(), q(1, 2));
    assert_eq!(moment_integer_h(2, 1, 1).unwrap(), q(2, 1));
    assert!(moment_integer_h(3, 2, 1).is_err());
}

#[test]
fn coefficient_asymptotics() {
    let n3 = Rational::from_integer(1000.into());
    let n4 = Rational::from_integer(10_000.into());
    for k in 1..=3u32 {
        for p in 1..=8u32 {
            let c = coeff_c(p, k);
            let d = |n: &Rational| {
                let scaled = coeff_cn(p, k, n.to_integer().try_into().unwrap()) / n.pow(p as i32);
                (scaled - &c).abs()
            };
            let (d3, d4) = (d(&n3), d(&n4));
            let bound = q(i64::from(2 * p * p * (k + p)), 1) / &n4 * &c;
            assert!(d4 < bound, "p={p} k={k}");
            if d3.is_zero() {
                assert!(d4.is_zero());
                continue;
            }
            // First-order decay: d(10^4) / d(10^3) sits just above 1/10.
            let ratio = &d4 / &d3;
            assert!(
                ratio >= q(1, 10) && ratio < q(11, 100),
                "p={p} k={k} ratio={ratio}"
            );
        }
    }
}

#[test]
fn finite_n_approaches_limit() {
    for (h, k) in [(1u32, 1u32), (1, 2), (2, 2)] {
        let limit = limit_f_integer_h(h, k).unwrap();
        let gaps: Vec<Rational> = [8u32, 16, 32, 64]
            .iter()
            .map(|&n| {
                let scale = Rational::from_integer(BigInt::from(n).pow(k * k + 2 * h));
                (moment_integer_h(n, h, k).unwrap() / scale - &limit).abs()
            })
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "h={h} k={k}");
    }
    let half = limit_f_half_h(1, 1, 1e-14).unwrap().value;
    let gaps: Vec<f64> = [10u32, 20, 40, 80]
        .iter()
        .map(|&n| (moment_half_h(n, 1, 1).unwrap().to_f64() / f64::from(n * n) - half).abs())
        .collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
}

#[test]
fn limit_tail_bound_is_honest() {
    for (two_h, k) in [(1, 1), (1, 2), (3, 2), (1, 3)] {
        let coarse = limit_f_half_h(two_h, k, 1e-6).unwrap();
        let fine = limit_f_half_h(two_h, k, 1e-14).unwrap();
        assert!((coarse.value - fine.value).abs() <= coarse.tail_bound + fine.tail_bound);
        assert!(coarse.tail_bound <= 1e-6);
    }
}

#[test]
fn empty_partition() {
    let e = Partition::empty();
    assert_eq!(e.hook_product(), BigInt::one());
    assert_eq!(e.transpose(), e);
}
