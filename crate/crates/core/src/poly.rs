//! Sparse univariate polynomials over ℤ with arbitrary-precision exponents.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{CapKind, Error, Result};
use crate::prime::{add_mod, mul_mod, pow_mod, Prime};
use crate::Caps;

/// Canonical sparse polynomial: exponents strictly increasing, no zero coefficients.
///
/// The empty term list is the zero polynomial. Equality is structural, which
/// coincides with polynomial equality because the form is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparsePoly {
    terms: Vec<(BigUint, BigInt)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

/// `a op b`; only multiplication can hit the monomial cap.
pub fn ring_op(a: &SparsePoly, b: &SparsePoly, op: RingOp, caps: &Caps) -> Result<SparsePoly> {
    match op {
        RingOp::Add => Ok(a + b),
        RingOp::Sub => Ok(a - b),
        RingOp::Mul => a.mul(b, caps.max_monomials),
    }
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), BigUint::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, BigUint::zero())
    }

    pub fn monomial(c: impl Into<BigInt>, exp: impl Into<BigUint>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            SparsePoly { terms: vec![(exp.into(), c)] }
        }
    }

    /// Normalizes an arbitrary term list: sorts, merges equal exponents, drops zeros.
    pub fn from_terms<E, C, I>(terms: I) -> Self
    where
        E: Into<BigUint>,
        C: Into<BigInt>,
        I: IntoIterator<Item = (E, C)>,
    {
        let mut acc: BTreeMap<BigUint, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e.into()).or_default() += c.into();
        }
        Self::from_map(acc)
    }

    /// Dense coefficient list, index = exponent.
    pub fn from_coeffs<C: Into<BigInt> + Clone>(coeffs: &[C]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, c)| (i as u64, c.clone().into())))
    }

    fn from_map(map: BTreeMap<BigUint, BigInt>) -> Self {
        SparsePoly {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Wraps a term list that is already canonical.
    pub(crate) fn from_canonical(terms: Vec<(BigUint, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        SparsePoly { terms }
    }

    pub fn terms(&self) -> &[(BigUint, BigInt)] {
        &self.terms
    }

    /// Number of monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<&BigUint> {
        self.terms.last().map(|(e, _)| e)
    }

    /// Smallest exponent carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<&BigUint> {
        self.terms.first().map(|(e, _)| e)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.last().map(|(_, c)| c)
    }

    pub fn coeff(&self, exp: &BigUint) -> BigInt {
        self.terms
            .binary_search_by(|(e, _)| e.cmp(exp))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// Coefficient of `x^0`.
    pub fn constant_term(&self) -> BigInt {
        match self.terms.first() {
            Some((e, c)) if e.is_zero() => c.clone(),
            _ => BigInt::zero(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> SparsePoly {
        if k.is_zero() {
            return Self::zero();
        }
        SparsePoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Multiplies by `x^shift`.
    pub fn shift(&self, shift: &BigUint) -> SparsePoly {
        SparsePoly {
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    fn merge(&self, other: &SparsePoly, negate_other: bool) -> SparsePoly {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &BigInt| if negate_other { -c } else { c.clone() };
        while i < self.len() && j < other.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp(eb) {
                Ordering::Less => {
                    out.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((eb.clone(), sign(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ea.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(e, c)| (e.clone(), sign(c))));
        SparsePoly { terms: out }
    }

    /// Product with colliding exponents merged.
    ///
    /// Fails once the accumulator holds more than `max_monomials` live terms.
    pub fn mul(&self, other: &SparsePoly, max_monomials: usize) -> Result<SparsePoly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        if self.len() == 1 {
            let (e, c) = &self.terms[0];
            return Ok(other.shift(e).scale(c));
        }
        if other.len() == 1 {
            let (e, c) = &other.terms[0];
            return Ok(self.shift(e).scale(c));
        }
        let mut acc: BTreeMap<BigUint, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                let prod = ca * cb;
                match acc.entry(e) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += prod;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                }
            }
            if acc.len() > max_monomials {
                return Err(Error::cap(
                    CapKind::Monomials,
                    acc.len(),
                    max_monomials as u64,
                ));
            }
        }
        Ok(Self::from_map(acc))
    }

    /// Exact `p(a)`.
    ///
    /// Powers come from one shared chain `a, a^2, a^4, …`; each `a^α` is the
    /// product of the chain entries selected by the bits of `α`. Bases in
    /// `{-1, 0, 1}` never build the chain, so they work at any degree.
    pub fn eval_integer(&self, a: &BigInt, max_bits: u64) -> Result<BigInt> {
        if self.is_zero() {
            return Ok(BigInt::zero());
        }
        if a.is_zero() {
            return Ok(self.constant_term());
        }
        if a.is_one() {
            return Ok(self.terms.iter().map(|(_, c)| c).sum());
        }
        if *a == -BigInt::one() {
            return Ok(self
                .terms
                .iter()
                .map(|(e, c)| if e.bit(0) { -c } else { c.clone() })
                .sum());
        }
        // |a|^α < 2^(α·bits(a)); reject before allocating anything huge
        let base_bits = BigUint::from(a.bits());
        let mut worst = BigUint::zero();
        for (e, c) in &self.terms {
            let est = e * &base_bits + c.bits();
            worst = worst.max(est);
        }
        let worst = worst + BigUint::from(self.len()).bits();
        if worst > BigUint::from(max_bits) {
            return Err(Error::cap(CapKind::Bits, worst, max_bits));
        }
        let top = self.degree().map(|d| d.bits()).unwrap_or(0);
        let mut chain = Vec::with_capacity(top as usize);
        chain.push(a.clone());
        for j in 1..top as usize {
            let sq = &chain[j - 1] * &chain[j - 1];
            chain.push(sq);
        }
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let mut pow = BigInt::one();
            for (j, base) in chain.iter().enumerate() {
                if e.bit(j as u64) {
                    pow *= base;
                }
            }
            total += c * pow;
        }
        Ok(total)
    }

    /// `p(a) mod q` after checking that `q` is prime.
    pub fn eval_mod(&self, a: u64, q: u64) -> Result<u64> {
        let q = Prime::new(q)?;
        if a >= q.get() {
            return Err(Error::Precondition(format!("residue {a} not reduced mod {q}")));
        }
        Ok(self.eval_mod_prime(a, q))
    }

    /// `p(a) mod q` with exponents reduced mod `q − 1` (Fermat); `a = 0` keeps
    /// only the constant term.
    pub fn eval_mod_prime(&self, a: u64, q: Prime) -> u64 {
        let q = q.get();
        let a = a % q;
        if a == 0 {
            return reduce_coeff(&self.constant_term(), q);
        }
        let order = BigUint::from(q - 1);
        self.terms.iter().fold(0u64, |acc, (e, c)| {
            let r = (e % &order).to_u64().expect("residue below q fits u64");
            add_mod(acc, mul_mod(reduce_coeff(c, q), pow_mod(a, r, q), q), q)
        })
    }

    /// Sign changes between consecutive nonzero coefficients in exponent order.
    pub fn sign_variations(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self
            .terms
            .windows(2)
            .filter(|w| w[0].1.is_negative() != w[1].1.is_negative())
            .count())
    }

    /// Sum of absolute values of the coefficients.
    pub fn one_norm(&self) -> BigUint {
        self.terms.iter().map(|(_, c)| c.magnitude()).sum()
    }

    /// Reduces every exponent mod `order`: the remainder modulo `x^order − 1`.
    pub fn fold(&self, order: u64) -> SparsePoly {
        assert!(order > 0, "fold order must be positive");
        let order = BigUint::from(order);
        Self::from_terms(self.terms.iter().map(|(e, c)| (e % &order, c.clone())))
    }

    /// Dense coefficients, index = exponent, when the degree is at most `max_degree`.
    pub fn to_dense(&self, max_degree: usize) -> Result<Vec<BigInt>> {
        let Some(deg) = self.degree() else {
            return Ok(Vec::new());
        };
        let d = deg
            .to_usize()
            .filter(|&d| d <= max_degree)
            .ok_or_else(|| Error::cap(CapKind::SturmDegree, deg, max_degree as u64))?;
        let mut out = vec![BigInt::zero(); d + 1];
        for (e, c) in &self.terms {
            out[e.to_usize().unwrap()] = c.clone();
        }
        Ok(out)
    }
}

pub(crate) fn reduce_coeff(c: &BigInt, q: u64) -> u64 {
    c.mod_floor(&BigInt::from(q)).to_u64().unwrap()
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.merge(rhs, false)
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.merge(rhs, true)
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.magnitude();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let unit = mag.is_one();
            match (e.is_zero(), e.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (_, true) if unit => f.write_str("x")?,
                (_, true) => write!(f, "{mag}*x")?,
                _ if unit => write!(f, "x^{e}")?,
                _ => write!(f, "{mag}*x^{e}")?,
            }
        }
        Ok(())
    }
}
