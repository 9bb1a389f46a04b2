#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use sps_core::{SparsePoly, SpsExpr};

/// Up to `max_terms` monomials, exponents in `0..=max_exp`, coefficients in `[-c, c]`.
pub fn poly(max_terms: usize, max_exp: u64, c: i64) -> impl Strategy<Value = SparsePoly> {
    proptest::collection::vec((0..=max_exp, -c..=c), 0..=max_terms).prop_map(SparsePoly::from_terms)
}

pub fn nonzero_poly(max_terms: usize, max_exp: u64, c: i64) -> impl Strategy<Value = SparsePoly> {
    poly(max_terms, max_exp, c).prop_filter("nonzero", |p| !p.is_zero())
}

/// Ragged expressions: up to `k` products of up to `m` factors.
pub fn expr(k: usize, m: usize, t: usize, max_exp: u64, c: i64) -> impl Strategy<Value = SpsExpr> {
    proptest::collection::vec(proptest::collection::vec(poly(t, max_exp, c), 1..=m), 1..=k)
        .prop_map(|products| SpsExpr::from_products(products).unwrap())
}

/// Dense coefficient vector of a polynomial with small degree.
pub fn dense(p: &SparsePoly) -> Vec<BigInt> {
    p.to_dense(100_000).unwrap()
}

/// Horner evaluation on a dense vector, independent of the sparse evaluator.
pub fn horner(d: &[BigInt], a: &BigInt) -> BigInt {
    d.iter().rev().fold(BigInt::from(0), |acc, c| acc * a + c)
}
