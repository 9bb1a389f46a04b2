//! Algebraic number generators `i ↦ f_i`, their prefix products and root sets.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::coeff::abs_le_pow2;
use crate::error::{Error, Result};
use crate::poly::SparsePoly;
use crate::Caps;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorKind {
    /// `f_i = x − i`
    Linear,
    /// `f_i = x^i − 1`
    CyclotomicLike,
    /// `f_i = x^i − 2^i·x + i² + 1`
    Mixed,
    /// Explicit finite table.
    Custom(Arc<BTreeMap<u64, SparsePoly>>),
}

impl GeneratorKind {
    pub fn name(&self) -> &'static str {
        match self {
            GeneratorKind::Linear => "linear",
            GeneratorKind::CyclotomicLike => "cyclotomic_like",
            GeneratorKind::Mixed => "mixed",
            GeneratorKind::Custom(_) => "custom",
        }
    }
}

/// A generator together with the exponent parameter `c` bounding
/// `deg f_i ≤ i^c` and `|coeff| ≤ 2^(i^c)`.
///
/// The computability requirement on the coefficient language is not
/// modelled; every built-in rule is polynomial-time by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub c: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenClause {
    Zero,
    Degree,
    Coefficient,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenViolation {
    pub index: u64,
    pub clause: GenClause,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validation {
    pub valid: bool,
    pub violations: Vec<GenViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HittingSet {
    /// Pairwise distinct integers.
    IntegerPoints(Vec<BigInt>),
    /// All roots of `x^i − 1` for each listed order `i`, kept symbolic.
    UnityRoots(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSetDescr {
    pub set: HittingSet,
    /// Generator name and prefix length the set was derived from, if any.
    pub source: Option<(String, u64)>,
}

impl HittingSetDescr {
    pub fn integer_points(points: Vec<BigInt>) -> Result<Self> {
        let distinct: BTreeSet<&BigInt> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(Error::Malformed("hitting set points must be distinct".into()));
        }
        Ok(HittingSetDescr {
            set: HittingSet::IntegerPoints(points),
            source: None,
        })
    }

    pub fn unity_roots(orders: Vec<u64>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::Malformed("root-of-unity orders must be positive".into()));
        }
        Ok(HittingSetDescr {
            set: HittingSet::UnityRoots(orders),
            source: None,
        })
    }
}

impl GeneratorSpec {
    pub fn linear() -> Self {
        GeneratorSpec { kind: GeneratorKind::Linear, c: 1 }
    }

    pub fn cyclotomic_like() -> Self {
        GeneratorSpec { kind: GeneratorKind::CyclotomicLike, c: 1 }
    }

    /// `c = 2`: with `c = 1` the constant `i² + 1` already exceeds `2^i` at `i = 2`.
    pub fn mixed() -> Self {
        GeneratorSpec { kind: GeneratorKind::Mixed, c: 2 }
    }

    pub fn custom(table: BTreeMap<u64, SparsePoly>, c: u32) -> Self {
        GeneratorSpec {
            kind: GeneratorKind::Custom(Arc::new(table)),
            c,
        }
    }

    /// `f_i` for `i ≥ 1`.
    pub fn term(&self, i: u64) -> Result<SparsePoly> {
        if i == 0 {
            return Err(Error::Precondition("generator index starts at 1".into()));
        }
        Ok(match &self.kind {
            GeneratorKind::Linear => SparsePoly::from_terms([(1u64, BigInt::one()), (0, -BigInt::from(i))]),
            GeneratorKind::CyclotomicLike => SparsePoly::from_terms([(i, 1), (0, -1)]),
            GeneratorKind::Mixed => {
                let sq = BigInt::from(i) * BigInt::from(i) + 1;
                SparsePoly::from_terms([
                    (BigUint::from(i), BigInt::one()),
                    (BigUint::one(), -(BigInt::one() << i)),
                    (BigUint::zero(), sq),
                ])
            }
            GeneratorKind::Custom(table) => table.get(&i).cloned().ok_or(Error::TableMiss(i))?,
        })
    }

    /// Checks nonzeroness and the degree and coefficient bounds for `1 ≤ i ≤ range_max`.
    pub fn validate(&self, range_max: u64) -> Result<Validation> {
        let mut violations = Vec::new();
        for i in 1..=range_max {
            let f = self.term(i)?;
            let bound = num_traits::pow(BigUint::from(i), self.c as usize);
            if f.is_zero() {
                violations.push(GenViolation { index: i, clause: GenClause::Zero });
                continue;
            }
            if f.degree().is_some_and(|d| *d > bound) {
                violations.push(GenViolation { index: i, clause: GenClause::Degree });
            }
            if f.terms().iter().any(|(_, c)| !abs_le_pow2(c, &bound)) {
                violations.push(GenViolation { index: i, clause: GenClause::Coefficient });
            }
        }
        Ok(Validation {
            valid: violations.is_empty(),
            violations,
        })
    }

    /// `f_1 · f_2 · … · f_m`.
    pub fn prefix_product(&self, m: u64, caps: &Caps) -> Result<SparsePoly> {
        if m == 0 {
            return Err(Error::Precondition("prefix length must be at least 1".into()));
        }
        let mut acc = SparsePoly::one();
        for i in 1..=m {
            acc = acc.mul(&self.term(i)?, caps.max_monomials)?;
        }
        Ok(acc)
    }

    /// Exact description of the roots of `f_1, …, f_m`.
    pub fn hitting_points(&self, m: u64) -> Result<HittingSetDescr> {
        let set = match self.kind {
            GeneratorKind::Linear => HittingSet::IntegerPoints((1..=m).map(BigInt::from).collect()),
            GeneratorKind::CyclotomicLike => HittingSet::UnityRoots((1..=m).collect()),
            _ => {
                return Err(Error::Unsupported(format!(
                    "no exact root description for generator '{}'",
                    self.kind.name()
                )))
            }
        };
        Ok(HittingSetDescr {
            set,
            source: Some((self.kind.name().to_string(), m)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> SparsePoly {
        SparsePoly::from_coeffs(c)
    }

    #[test]
    fn built_in_terms() {
        assert_eq!(GeneratorSpec::linear().term(7).unwrap(), p(&[-7, 1]));
        assert_eq!(GeneratorSpec::mixed().term(2).unwrap(), p(&[5, -4, 1]));
        assert_eq!(GeneratorSpec::cyclotomic_like().term(3).unwrap(), p(&[-1, 0, 0, 1]));
        // i = 1 collapses x − 2x
        assert_eq!(GeneratorSpec::mixed().term(1).unwrap(), p(&[2, -1]));
        assert!(GeneratorSpec::linear().term(0).is_err());
    }

    #[test]
    fn custom_table_miss() {
        let g = GeneratorSpec::custom(BTreeMap::from([(1, p(&[1, 1]))]), 1);
        assert_eq!(g.term(1).unwrap(), p(&[1, 1]));
        assert_eq!(g.term(2), Err(Error::TableMiss(2)));
    }

    #[test]
    fn validation() {
        assert!(GeneratorSpec::linear().validate(100).unwrap().valid);
        assert!(GeneratorSpec::cyclotomic_like().validate(100).unwrap().valid);

        let table = (1..=6u64)
            .map(|i| {
                let big = BigInt::one() << (1usize << i);
                (i, SparsePoly::from_terms([(BigUint::one(), BigInt::one()), (BigUint::zero(), -big)]))
            })
            .collect();
        let v = GeneratorSpec::custom(table, 1).validate(6).unwrap();
        assert!(!v.valid);
        assert_eq!(v.violations[0], GenViolation { index: 1, clause: GenClause::Coefficient });
        assert_eq!(v.violations.len(), 6);
    }

    #[test]
    fn mixed_validation_against_direct_loop() {
        // oracle: plain integer arithmetic on the three coefficients
        let oracle = |c: u32, range: u64| {
            (1..=range).all(|i| {
                let b = i.pow(c);
                let deg_ok = i <= b;
                let pow2 = |v: u128| b >= 128 || v <= 1u128 << b;
                deg_ok && pow2(1) && pow2(1u128 << i) && pow2((i * i + 1) as u128)
            })
        };
        for c in 1..=3 {
            let g = GeneratorSpec { c, ..GeneratorSpec::mixed() };
            assert_eq!(g.validate(50).unwrap().valid, oracle(c, 50), "c = {c}");
        }
        assert!(GeneratorSpec::mixed().validate(50).unwrap().valid);
        let v = GeneratorSpec { c: 1, ..GeneratorSpec::mixed() }.validate(50).unwrap();
        assert_eq!(v.violations[0], GenViolation { index: 2, clause: GenClause::Coefficient });
    }

    #[test]
    fn prefix_products() {
        let caps = Caps::default();
        assert_eq!(GeneratorSpec::linear().prefix_product(2, &caps).unwrap(), p(&[2, -3, 1]));
        // brute-force expansion of (x − 1)(x² − 1)(x³ − 1)
        let mut dense = vec![1i64];
        for i in 1..=3usize {
            let mut next = vec![0i64; dense.len() + i];
            for (j, &c) in dense.iter().enumerate() {
                next[j] -= c;
                next[j + i] += c;
            }
            dense = next;
        }
        let g = GeneratorSpec::cyclotomic_like().prefix_product(3, &caps).unwrap();
        assert_eq!(g, p(&dense));
        assert_eq!(g.degree(), Some(&BigUint::from(6u32)));
    }

    #[test]
    fn pochhammer_eight_coefficients() {
        // brute-force: multiply out (x − i) over plain i128 vectors
        let mut dense = vec![1i128];
        for i in 1..=8i128 {
            let mut next = vec![0i128; dense.len() + 1];
            for (j, &c) in dense.iter().enumerate() {
                next[j] -= i * c;
                next[j + 1] += c;
            }
            dense = next;
        }
        assert_eq!(dense, vec![40320, -109584, 118124, -67284, 22449, -4536, 546, -36, 1]);
        let g = GeneratorSpec::linear().prefix_product(8, &Caps::default()).unwrap();
        assert_eq!(g, SparsePoly::from_coeffs(&dense));
    }

    #[test]
    fn hitting_point_descriptions() {
        let h = GeneratorSpec::linear().hitting_points(5).unwrap();
        assert_eq!(h.set, HittingSet::IntegerPoints((1..=5).map(BigInt::from).collect()));
        assert_eq!(h.source, Some(("linear".into(), 5)));
        let h = GeneratorSpec::cyclotomic_like().hitting_points(4).unwrap();
        assert_eq!(h.set, HittingSet::UnityRoots(vec![1, 2, 3, 4]));
        assert!(matches!(GeneratorSpec::mixed().hitting_points(3), Err(Error::Unsupported(_))));
        assert!(HittingSetDescr::integer_points(vec![BigInt::one(), BigInt::one()]).is_err());
    }
}
