//! Integer partitions, Ferrers-diagram combinatorics and the generalised
//! Pochhammer symbol `[b]_λ` (Jack parameter fixed at one).

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// A weakly decreasing sequence of positive parts, largest first.
///
/// The empty partition is a valid value; every product over its boxes is one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(
                "partition parts must be positive".into(),
            ));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `|λ|`, the sum of the parts.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `ℓ(λ)`, the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Reflection of the Ferrers diagram in the main diagonal, by column
    /// counting.
    pub fn transpose(&self) -> Self {
        let parts = (1..=self.largest_part())
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count() as u32)
            .collect();
        Self { parts }
    }

    /// Iterates over the boxes `(i, j)` of the Ferrers diagram, zero-based
    /// row `i` and column `j`.
    pub fn boxes(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &row)| (0..row).map(move |j| (i as u32, j)))
    }

    /// `h_λ`: the product over boxes of `arm + leg + 1`.
    pub fn hook_product(&self) -> BigInt {
        let columns = self.transpose();
        self.boxes().fold(BigInt::one(), |acc, (i, j)| {
            let arm = self.parts[i as usize] - j - 1;
            let leg = columns.parts[j as usize] - i - 1;
            acc * (arm + leg + 1)
        })
    }

    /// `[b]_λ = ∏_{(i,j) ∈ λ} (b + j - i)` with one-based box coordinates.
    pub fn pochhammer(&self, b: &Rational) -> Rational {
        self.boxes().fold(Rational::one(), |acc, (i, j)| {
            acc * (b + int(j as i64 - i as i64))
        })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Free-function form of [`Partition::hook_product`].
pub fn hook_product(lambda: &Partition) -> BigInt {
    lambda.hook_product()
}

/// Free-function form of [`Partition::transpose`].
pub fn transpose(lambda: &Partition) -> Partition {
    lambda.transpose()
}

/// Free-function form of [`Partition::pochhammer`].
pub fn pochhammer(b: &Rational, lambda: &Partition) -> Rational {
    lambda.pochhammer(b)
}

/// All partitions of `p` into at most `max_parts` parts, in
/// reverse-lexicographic order: `(4)` before `(3,1)` before `(2,2)`.
pub fn partitions_of(p: u32, max_parts: u32) -> Vec<Partition> {
    partitions_bounded(p, max_parts, p)
}

/// Partitions of `p` with at most `max_parts` parts, each at most
/// `max_part`, in reverse-lexicographic order.
pub fn partitions_bounded(p: u32, max_parts: u32, max_part: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(max_parts as usize);
    fill(p, max_parts, max_part, &mut current, &mut out);
    out
}

fn fill(rest: u32, slots: u32, cap: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    // the remaining slots cannot absorb `rest` when every part is <= cap
    if slots == 0 || u64::from(slots) * u64::from(cap) < u64::from(rest) {
        return;
    }
    for part in (1..=cap.min(rest)).rev() {
        current.push(part);
        fill(rest - part, slots - 1, part, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{factorial, ratio};
    use num_traits::Zero;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            partitions_of(4, 2),
            vec![part(&[4]), part(&[3, 1]), part(&[2, 2])]
        );
        assert_eq!(partitions_of(0, 3), vec![Partition::empty()]);
        assert_eq!(partitions_of(2, 1), vec![part(&[2])]);
        assert_eq!(partitions_bounded(5, 3, 2), vec![part(&[2, 2, 1])]);
    }

    #[test]
    fn rejects_malformed_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn hook_examples() {
        assert_eq!(part(&[4, 3, 1, 1]).hook_product(), BigInt::from(1680));
        assert_eq!(Partition::empty().hook_product(), BigInt::one());
        for p in 1..10 {
            assert_eq!(part(&[p]).hook_product(), factorial(p));
        }
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(part(&[4, 3, 1, 1]).transpose(), part(&[4, 2, 2, 1]));
        assert_eq!(part(&[3]).transpose(), part(&[1, 1, 1]));
        assert_eq!(Partition::empty().transpose(), Partition::empty());
    }

    #[test]
    fn pochhammer_examples() {
        for p in 0..8 {
            let row = if p == 0 {
                Partition::empty()
            } else {
                part(&[p])
            };
            assert_eq!(
                row.pochhammer(&int(1)),
                Rational::from_integer(factorial(p))
            );
        }
        assert_eq!(Partition::empty().pochhammer(&ratio(-7, 3)), int(1));
        for n in 1..6 {
            assert_eq!(part(&[1]).pochhammer(&int(-n)), int(-n));
        }
    }

    #[test]
    fn pochhammer_vanishes_beyond_k_parts() {
        for p in 0..=10 {
            for lambda in partitions_of(p, p.max(1)) {
                for k in 1..=5i64 {
                    let vanishes = lambda.pochhammer(&int(k)).is_zero();
                    assert_eq!(vanishes, lambda.len() as i64 > k, "{lambda} k={k}");
                }
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(part(&[3, 1]).to_string(), "(3,1)");
        assert_eq!(Partition::empty().to_string(), "()");
    }
}
