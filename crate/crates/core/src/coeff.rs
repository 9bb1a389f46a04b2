//! Integers written as a difference of two sums of powers of two.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

/// `Σ 2^p − Σ 2^q` over `plus` and `minus` bit positions.
///
/// The number of digits is what membership in a sparse-coefficient class
/// charges against its sparsity budget. Several decompositions can name the
/// same integer; [`SparseCoeff::from_int`] picks the sign-magnitude split
/// (the set bits of `|v|` on the side of `v`'s sign), and
/// [`SparseCoeff::non_adjacent`] the minimal-weight signed-digit form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseCoeff {
    plus: BTreeSet<u64>,
    minus: BTreeSet<u64>,
}

impl SparseCoeff {
    pub fn new(plus: impl IntoIterator<Item = u64>, minus: impl IntoIterator<Item = u64>) -> Self {
        SparseCoeff {
            plus: plus.into_iter().collect(),
            minus: minus.into_iter().collect(),
        }
    }

    /// Sign-magnitude decomposition: every set bit of `|v|` goes on one side.
    pub fn from_int(v: &BigInt) -> Self {
        let bits = set_bits(v.magnitude());
        match v.sign() {
            Sign::Minus => SparseCoeff::new([], bits),
            _ => SparseCoeff::new(bits, []),
        }
    }

    /// Non-adjacent form; its weight is the minimum over all signed binary expansions.
    pub fn non_adjacent(v: &BigInt) -> Self {
        let mut plus = BTreeSet::new();
        let mut minus = BTreeSet::new();
        let mut n = v.clone();
        let mut pos = 0u64;
        let two = BigInt::from(2);
        let four = BigInt::from(4);
        while !n.is_zero() {
            if n.is_odd_int() {
                // digit in {-1, +1} chosen so that n - digit is divisible by 4
                let r = ((&n % &four) + &four) % &four;
                if r == BigInt::one() {
                    plus.insert(pos);
                    n -= 1;
                } else {
                    minus.insert(pos);
                    n += 1;
                }
            }
            n /= &two;
            pos += 1;
        }
        SparseCoeff { plus, minus }
    }

    pub fn plus(&self) -> &BTreeSet<u64> {
        &self.plus
    }

    pub fn minus(&self) -> &BTreeSet<u64> {
        &self.minus
    }

    pub fn digit_count(&self) -> usize {
        self.plus.len() + self.minus.len()
    }

    pub fn value(&self) -> BigInt {
        let sum = |bits: &BTreeSet<u64>| {
            let mut acc = BigUint::zero();
            for &b in bits {
                acc.set_bit(b, true);
            }
            BigInt::from(acc)
        };
        sum(&self.plus) - sum(&self.minus)
    }

    /// Union of two decompositions whose four bit sets are pairwise disjoint.
    ///
    /// Returns `None` when any position is shared, since the result would no
    /// longer be a set of distinct digits.
    pub fn disjoint_union(&self, other: &SparseCoeff) -> Option<SparseCoeff> {
        let mine: BTreeSet<u64> = self.plus.union(&self.minus).copied().collect();
        let theirs: BTreeSet<u64> = other.plus.union(&other.minus).copied().collect();
        if !mine.is_disjoint(&theirs) || !self.plus.is_disjoint(&self.minus) || !other.plus.is_disjoint(&other.minus) {
            return None;
        }
        Some(SparseCoeff {
            plus: self.plus.union(&other.plus).copied().collect(),
            minus: self.minus.union(&other.minus).copied().collect(),
        })
    }
}

trait OddInt {
    fn is_odd_int(&self) -> bool;
}

impl OddInt for BigInt {
    fn is_odd_int(&self) -> bool {
        self.magnitude().bit(0)
    }
}

pub(crate) fn set_bits(n: &BigUint) -> Vec<u64> {
    (0..n.bits()).filter(|&b| n.bit(b)).collect()
}

/// `|c| ≤ 2^e` without materializing `2^e`.
pub(crate) fn abs_le_pow2(c: &BigInt, e: &BigUint) -> bool {
    let m = c.abs();
    if m.is_zero() {
        return true;
    }
    let bits = BigUint::from(m.bits());
    // |c| < 2^bits and |c| ≥ 2^(bits-1)
    if bits <= *e {
        return true;
    }
    bits == e + 1u32 && m.magnitude().count_ones() == 1
}
