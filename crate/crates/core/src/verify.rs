//! Exact identity suites, each a batch of checks with a pass/fail tally.
//! Used by the `verify` command and by the test suites.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::coefficients::{
    appendix_b1_sum, appendix_b2_closed, appendix_b2_sum, bound_dominates, coeff_c, coeff_c_closed,
    coeff_cn, coeff_cn_transposed, hook_content_sum, identity_91_residual,
};
use crate::moments::{appendix_a_closed, keating_snaith, moment, moment_half_h, MomentOrder};
use crate::partitions::{partitions_of, Partition};
use crate::rational::{factorial, from_bigint, int, pow, ratio, Rational};
use crate::specfun::{laguerre, reduced_h_hankel, reduced_h_hyper, reduced_h_wronskian};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(case());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn passes(&self) -> usize {
        self.checks - self.failures.len()
    }
}

/// All suites, in a fixed order.
pub fn run_all() -> Vec<SuiteReport> {
    vec![
        transpose_identities(12),
        partition_counts(40),
        hook_formula(10),
        pochhammer_vanishing(10),
        closed_forms(30),
        bound_dominance(),
        identity_91(),
        hook_content(20, 4),
        appendix_b(25),
        transposed_coefficients(8),
        three_route_h(4, 8),
        half_moment_closed_form(50),
        keating_snaith_consistency(4, 8),
        moment_positivity(12, 5, 3),
        laguerre_identities(12),
    ]
}

/// `[b]_{λᵀ} = (-1)^{|λ|} [-b]_λ` and `h_{λᵀ} = h_λ`.
pub fn transpose_identities(max_weight: u32) -> SuiteReport {
    let mut r = SuiteReport::new("transpose identities");
    let bs = [int(-3), int(-1), ratio(1, 2), int(2)];
    for p in 0..=max_weight {
        for lambda in partitions_of(p, p.max(1)) {
            let t = lambda.transpose();
            r.check(t.transpose() == lambda, || {
                format!("double transpose {lambda}")
            });
            r.check(t.hook_product() == lambda.hook_product(), || {
                format!("hook {lambda}")
            });
            let sign = if p % 2 == 0 { int(1) } else { int(-1) };
            for b in &bs {
                let ok = t.pochhammer(b) == &sign * lambda.pochhammer(&-b.clone());
                r.check(ok, || format!("pochhammer b={b} λ={lambda}"));
            }
        }
    }
    r
}

/// Partition counts against Euler's pentagonal recurrence; enumerated
/// partitions must be distinct, valid and of the right weight.
pub fn partition_counts(max_p: u32) -> SuiteReport {
    let mut r = SuiteReport::new("partition enumeration");
    let counts = pentagonal_counts(max_p as usize);
    for p in 0..=max_p {
        let all = partitions_of(p, p.max(1));
        r.check(BigInt::from(all.len()) == counts[p as usize], || {
            format!("p({p}) = {} enumerated", all.len())
        });
        let distinct: BTreeSet<&Partition> = all.iter().collect();
        r.check(distinct.len() == all.len(), || {
            format!("duplicates at p = {p}")
        });
        r.check(all.iter().all(|l| l.weight() == p), || {
            format!("weights at p = {p}")
        });
        let sorted = all.windows(2).all(|w| w[0].parts() > w[1].parts());
        r.check(sorted, || format!("order at p = {p}"));
    }
    r
}

fn pentagonal_counts(max: usize) -> Vec<BigInt> {
    let mut table = vec![BigInt::zero(); max + 1];
    table[0] = BigInt::one();
    for i in 1..=max {
        let mut sum = BigInt::zero();
        for j in 1i64.. {
            let g1 = (j * (3 * j - 1) / 2) as usize;
            if g1 > i {
                break;
            }
            let g2 = (j * (3 * j + 1) / 2) as usize;
            let mut term = table[i - g1].clone();
            if g2 <= i {
                term += &table[i - g2];
            }
            if j % 2 == 1 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        table[i] = sum;
    }
    table
}

/// Arm/leg hook product against `∏ᵢ(λᵢ+ℓ-i)! / ∏_{i<j}(λᵢ-λⱼ-i+j)`.
pub fn hook_formula(max_p: u32) -> SuiteReport {
    let mut r = SuiteReport::new("hook length formula");
    for p in 0..=max_p {
        for lambda in partitions_of(p, p.max(1)) {
            let parts: Vec<i64> = lambda.parts().iter().map(|&x| x.into()).collect();
            let len = parts.len() as i64;
            let num = (0..parts.len()).fold(BigInt::one(), |acc, i| {
                acc * factorial((parts[i] + len - 1 - i as i64) as u32)
            });
            let mut den = BigInt::one();
            for i in 0..parts.len() {
                for j in i + 1..parts.len() {
                    den *= parts[i] - parts[j] - i as i64 + j as i64;
                }
            }
            r.check(num / den == lambda.hook_product(), || format!("{lambda}"));
        }
    }
    r
}

/// `[k]_λ = 0` exactly when `ℓ(λ) > k`.
pub fn pochhammer_vanishing(max_p: u32) -> SuiteReport {
    let mut r = SuiteReport::new("pochhammer vanishing");
    for p in 0..=max_p {
        for lambda in partitions_of(p, p.max(1)) {
            for k in 1..=6i64 {
                let zero = lambda.pochhammer(&int(k)).is_zero();
                r.check(zero == (lambda.len() as i64 > k), || {
                    format!("k={k} λ={lambda}")
                });
            }
        }
    }
    r
}

pub fn closed_forms(max_p: u32) -> SuiteReport {
    let mut r = SuiteReport::new("closed forms of C(p,1), C(p,2)");
    for k in 1..=2 {
        for p in 0..=max_p {
            let ok = coeff_c(p, k) == coeff_c_closed(p, k).expect("k in {1,2}");
            r.check(ok, || format!("p={p} k={k}"));
        }
    }
    r
}

pub fn bound_dominance() -> SuiteReport {
    let mut r = SuiteReport::new("tail bound dominance");
    for p in 2..=20 {
        for k in 1..=3 {
            for n in [1, 5, 25] {
                r.check(bound_dominates(p, k, n).unwrap_or(false), || {
                    format!("p={p} k={k} N={n}")
                });
            }
        }
    }
    r
}

pub fn identity_91() -> SuiteReport {
    let mut r = SuiteReport::new("odd-order combinatorial identity");
    for two_h in [1, 3, 5] {
        for k in 1..=3 {
            if two_h > 2 * k {
                continue;
            }
            for n in 1..=10 {
                let ok = identity_91_residual(two_h, k, n).is_ok_and(|v| v.is_zero());
                r.check(ok, || format!("2h={two_h} k={k} N={n}"));
            }
        }
    }
    r
}

pub fn hook_content(max_p: u32, max_k: u32) -> SuiteReport {
    let mut r = SuiteReport::new("hook-content sums");
    for p in 0..=max_p {
        for k in 1..=max_k {
            let expected = pow(&int(k.into()), p) / from_bigint(factorial(p));
            r.check(hook_content_sum(p, k) == expected, || {
                format!("p={p} k={k}")
            });
        }
    }
    r
}

pub fn appendix_b(max_p: u32) -> SuiteReport {
    let mut r = SuiteReport::new("binomial and Vandermonde sums");
    for p in 1..=max_p {
        for n in 0..p {
            let ok = appendix_b1_sum(p, n).is_ok_and(|v| v.is_one());
            r.check(ok, || format!("alternating sum p={p} n={n}"));
        }
    }
    for p in 0..=max_p {
        r.check(appendix_b2_sum(p) == appendix_b2_closed(p), || {
            format!("squared sum p={p}")
        });
    }
    r
}

pub fn transposed_coefficients(max_p: u32) -> SuiteReport {
    let mut r = SuiteReport::new("C_N(p,k) via transposed partitions");
    for p in 0..=max_p {
        for k in 1..=4 {
            for n in 1..=6 {
                r.check(coeff_cn(p, k, n) == coeff_cn_transposed(p, k, n), || {
                    format!("p={p} k={k} N={n}")
                });
            }
        }
    }
    r
}

pub fn three_route_h(max_k: u32, max_n: u32) -> SuiteReport {
    let mut r = SuiteReport::new("three-route H identity");
    let zetas = [int(0), ratio(1, 3), int(1), ratio(7, 2)];
    for k in 1..=max_k {
        for n in 1..=max_n {
            for z in &zetas {
                let w = reduced_h_wronskian(k, n, z);
                let ok = w == reduced_h_hankel(k, n, z) && w == reduced_h_hyper(k, n, z);
                r.check(ok, || format!("k={k} N={n} zeta={z}"));
            }
        }
    }
    r
}

pub fn half_moment_closed_form(max_n: u32) -> SuiteReport {
    let mut r = SuiteReport::new("F_N(1/2,1) against elementary closed form");
    for n in 1..=max_n {
        let ok = moment_half_h(n, 1, 1).is_ok_and(|m| m == appendix_a_closed(n));
        r.check(ok, || format!("N={n}"));
    }
    r
}

pub fn keating_snaith_consistency(max_k: u32, max_n: u32) -> SuiteReport {
    let mut r = SuiteReport::new("F_N(0,k) = H(k,0)");
    for k in 1..=max_k {
        for n in 1..=max_n {
            let ks = keating_snaith(n, k);
            let ok = reduced_h_hyper(k, n, &Rational::zero()) == ks
                && reduced_h_wronskian(k, n, &Rational::zero()) == ks;
            r.check(ok, || format!("k={k} N={n}"));
        }
    }
    r
}

pub fn moment_positivity(max_n: u32, max_two_h: u32, max_k: u32) -> SuiteReport {
    let mut r = SuiteReport::new("moment positivity");
    for n in 1..=max_n {
        for two_h in 0..=max_two_h {
            for k in 1..=max_k {
                let Ok(order) = MomentOrder::new(two_h, k) else {
                    continue;
                };
                let ok = moment(n, order).is_ok_and(|m| m.q.is_positive());
                r.check(ok, || format!("N={n} 2h={two_h} k={k}"));
            }
        }
    }
    r
}

pub fn laguerre_identities(max_n: u32) -> SuiteReport {
    let mut r = SuiteReport::new("Laguerre derivative and recurrence");
    for n in 1..=max_n {
        for alpha in 0..=4 {
            let l = laguerre(n, alpha).expect("alpha >= 0");
            let down = laguerre(n - 1, alpha + 1).expect("alpha >= 0");
            let d = l.as_poly().derivative();
            r.check(d == down.as_poly().scale(&-Rational::one()), || {
                format!("derivative n={n} alpha={alpha}")
            });
            let prev = laguerre(n, alpha - 1).expect("n + alpha - 1 >= 0");
            let side = laguerre(n - 1, alpha).expect("alpha >= 0");
            r.check(&prev.as_poly().add(side.as_poly()) == l.as_poly(), || {
                format!("recurrence n={n} alpha={alpha}")
            });
        }
    }
    r
}
