//! Sums of products of sparse polynomials: `Σ_i Π_j f_ij`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::coeff::{abs_le_pow2, SparseCoeff};
use crate::error::{CapKind, Error, Result};
use crate::poly::{reduce_coeff, SparsePoly};
use crate::prime::{add_mod, mul_mod, Prime};
use crate::Caps;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffForm {
    Int(BigInt),
    Digits(SparseCoeff),
}

/// One entry of the shared factor table.
///
/// Coefficients may carry an explicit digit decomposition; the others fall
/// back to the sign-magnitude split of their value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factor {
    poly: SparsePoly,
    digits: Vec<Option<SparseCoeff>>,
}

impl Factor {
    pub fn new(poly: SparsePoly) -> Self {
        let digits = vec![None; poly.len()];
        Factor { poly, digits }
    }

    /// Builds a factor whose monomials are given with explicit digit forms.
    /// Exponents must be strictly increasing and every value nonzero.
    pub fn with_digits(monomials: Vec<(BigUint, SparseCoeff)>) -> Result<Self> {
        Self::with_forms(monomials.into_iter().map(|(e, d)| (e, CoeffForm::Digits(d))).collect())
    }

    /// Like [`Factor::with_digits`], but each coefficient may be a plain integer.
    pub fn with_forms(monomials: Vec<(BigUint, CoeffForm)>) -> Result<Self> {
        if monomials.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Malformed("factor exponents must be strictly increasing".into()));
        }
        let mut terms = Vec::with_capacity(monomials.len());
        let mut digits = Vec::with_capacity(monomials.len());
        for (e, form) in monomials {
            let (v, d) = match form {
                CoeffForm::Int(v) => (v, None),
                CoeffForm::Digits(d) => (d.value(), Some(d)),
            };
            if v.is_zero() {
                return Err(Error::Malformed(format!("zero coefficient at exponent {e}")));
            }
            terms.push((e, v));
            digits.push(d);
        }
        Ok(Factor {
            poly: SparsePoly::from_canonical(terms),
            digits,
        })
    }

    pub fn poly(&self) -> &SparsePoly {
        &self.poly
    }

    /// Explicit digit forms aligned with `poly().terms()`.
    pub fn explicit_digits(&self) -> &[Option<SparseCoeff>] {
        &self.digits
    }

    /// Digit form of the `idx`-th monomial: explicit if carried, else sign-magnitude.
    pub fn digit_form(&self, idx: usize) -> SparseCoeff {
        match &self.digits[idx] {
            Some(d) => d.clone(),
            None => SparseCoeff::from_int(&self.poly.terms()[idx].1),
        }
    }

    /// Fewest digits any known decomposition of the `idx`-th coefficient uses.
    fn min_digits(&self, idx: usize) -> usize {
        let naf = SparseCoeff::non_adjacent(&self.poly.terms()[idx].1).digit_count();
        naf.min(self.digit_form(idx).digit_count())
    }
}

impl From<SparsePoly> for Factor {
    fn from(poly: SparsePoly) -> Self {
        Factor::new(poly)
    }
}

/// `Σ_i Π_j f_ij` over a shared factor table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpsExpr {
    factors: Vec<Factor>,
    products: Vec<Vec<usize>>,
}

/// Measured size parameters. `m` and `t` are maxima, so ragged
/// expressions get conservative bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpsParams {
    /// Total monomial count, one charge per factor reference.
    pub s: usize,
    pub k: usize,
    pub m: usize,
    pub t: usize,
    pub deg_max: BigUint,
    pub coeff_max_bits: u64,
    pub digit_max: usize,
}

impl SpsParams {
    /// `s · deg_max`, an upper bound on the degree of the expanded polynomial.
    pub fn degree_bound(&self) -> BigUint {
        BigUint::from(self.s) * &self.deg_max
    }

    /// `k · t^m`, an upper bound on the monomial count of the expansion.
    pub fn monomial_bound(&self) -> BigUint {
        BigUint::from(self.k) * num_traits::pow(BigUint::from(self.t), self.m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Size { measured: usize, bound: usize },
    Digits { factor: usize, exponent: BigUint, digits: usize },
    Magnitude { factor: usize, exponent: BigUint },
    Degree { factor: usize, degree: BigUint },
}

impl Violation {
    pub fn clause(&self) -> &'static str {
        match self {
            Violation::Size { .. } => "size",
            Violation::Digits { .. } => "digits",
            Violation::Magnitude { .. } => "magnitude",
            Violation::Degree { .. } => "degree",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    Integer,
    Modular(Prime),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Integer(BigInt),
    Residue(u64),
}

impl Value {
    pub fn is_zero(&self) -> bool {
        match self {
            Value::Integer(v) => v.is_zero(),
            Value::Residue(r) => *r == 0,
        }
    }
}

impl SpsExpr {
    /// Requires at least one product, nonempty products and in-range references.
    pub fn new(factors: Vec<Factor>, products: Vec<Vec<usize>>) -> Result<Self> {
        if products.is_empty() {
            return Err(Error::Malformed("expression needs at least one product".into()));
        }
        for (i, p) in products.iter().enumerate() {
            if p.is_empty() {
                return Err(Error::Malformed(format!("product {i} is empty")));
            }
            if let Some(&bad) = p.iter().find(|&&f| f >= factors.len()) {
                return Err(Error::Malformed(format!(
                    "product {i} references factor {bad}, table has {}",
                    factors.len()
                )));
            }
        }
        Ok(SpsExpr { factors, products })
    }

    /// Builds the factor table from explicit products, sharing equal factors.
    pub fn from_products(products: Vec<Vec<SparsePoly>>) -> Result<Self> {
        let mut table: Vec<Factor> = Vec::new();
        let mut index: HashMap<SparsePoly, usize> = HashMap::new();
        let refs = products
            .into_iter()
            .map(|prod| {
                prod.into_iter()
                    .map(|f| {
                        *index.entry(f.clone()).or_insert_with(|| {
                            table.push(Factor::new(f));
                            table.len() - 1
                        })
                    })
                    .collect()
            })
            .collect();
        Self::new(table, refs)
    }

    /// Single product of a single factor.
    pub fn single(poly: SparsePoly) -> Self {
        SpsExpr {
            factors: vec![Factor::new(poly)],
            products: vec![vec![0]],
        }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn products(&self) -> &[Vec<usize>] {
        &self.products
    }

    pub fn k(&self) -> usize {
        self.products.len()
    }

    fn referenced(&self) -> Vec<bool> {
        let mut used = vec![false; self.factors.len()];
        for &f in self.products.iter().flatten() {
            used[f] = true;
        }
        used
    }

    pub fn measure(&self) -> SpsParams {
        let mut params = SpsParams {
            s: 0,
            k: self.k(),
            m: 0,
            t: 0,
            deg_max: BigUint::zero(),
            coeff_max_bits: 0,
            digit_max: 0,
        };
        for prod in &self.products {
            params.m = params.m.max(prod.len());
            for &f in prod {
                params.s += self.factors[f].poly.len();
            }
        }
        for (factor, _) in self.factors.iter().zip(self.referenced()).filter(|(_, u)| *u) {
            let poly = factor.poly();
            params.t = params.t.max(poly.len());
            if let Some(d) = poly.degree() {
                if *d > params.deg_max {
                    params.deg_max = d.clone();
                }
            }
            for (idx, (_, c)) in poly.terms().iter().enumerate() {
                params.coeff_max_bits = params.coeff_max_bits.max(c.bits());
                params.digit_max = params.digit_max.max(factor.digit_form(idx).digit_count());
            }
        }
        params
    }

    /// Verdict for membership in the class with size and digit budget `s`,
    /// factor degree and coefficient exponent `e`.
    pub fn is_member(&self, s: usize, e: &BigUint) -> Membership {
        let mut violations = Vec::new();
        let measured = self.measure().s;
        if measured > s {
            violations.push(Violation::Size { measured, bound: s });
        }
        let used = self.referenced();
        for (fi, factor) in self.factors.iter().enumerate() {
            if !used[fi] {
                continue;
            }
            if let Some(d) = factor.poly.degree() {
                if d > e {
                    violations.push(Violation::Degree { factor: fi, degree: d.clone() });
                }
            }
            for (idx, (exp, c)) in factor.poly.terms().iter().enumerate() {
                let digits = factor.min_digits(idx);
                if digits > s {
                    violations.push(Violation::Digits { factor: fi, exponent: exp.clone(), digits });
                }
                if !abs_le_pow2(c, e) {
                    violations.push(Violation::Magnitude { factor: fi, exponent: exp.clone() });
                }
            }
        }
        Membership {
            member: violations.is_empty(),
            violations,
        }
    }

    pub fn eval(&self, point: &BigInt, mode: EvalMode, caps: &Caps) -> Result<Value> {
        match mode {
            EvalMode::Integer => self.eval_integer(point, caps).map(Value::Integer),
            EvalMode::Modular(q) => Ok(Value::Residue(self.eval_mod(reduce(point, q), q))),
        }
    }

    /// Exact value at `a` without expanding; each referenced factor is evaluated once.
    pub fn eval_integer(&self, a: &BigInt, caps: &Caps) -> Result<BigInt> {
        let used = self.referenced();
        let mut values = Vec::with_capacity(self.factors.len());
        for (f, u) in self.factors.iter().zip(used) {
            values.push(if u {
                Some(f.poly.eval_integer(a, caps.max_eval_bits)?)
            } else {
                None
            });
        }
        let mut total = BigInt::zero();
        for prod in &self.products {
            let mut acc = BigInt::one();
            for &f in prod {
                let v = values[f].as_ref().expect("referenced factor evaluated");
                let bits = acc.bits() + v.bits();
                if bits > caps.max_eval_bits {
                    return Err(Error::cap(CapKind::Bits, bits, caps.max_eval_bits));
                }
                acc *= v;
            }
            total += acc;
        }
        Ok(total)
    }

    /// `E(a) mod q`; `a` is reduced first.
    pub fn eval_mod(&self, a: u64, q: Prime) -> u64 {
        let a = a % q.get();
        let used = self.referenced();
        let values: Vec<u64> = self
            .factors
            .iter()
            .zip(used)
            .map(|(f, u)| if u { f.poly.eval_mod_prime(a, q) } else { 0 })
            .collect();
        let qv = q.get();
        self.products.iter().fold(0, |sum, prod| {
            let term = prod.iter().fold(1, |acc, &f| mul_mod(acc, values[f], qv));
            add_mod(sum, term, qv)
        })
    }

    /// A-priori bound on the expansion's monomial count: the smaller of
    /// `Σ_i Π_j t_ij` (at most `k·t^m`) and one more than the largest product degree.
    pub fn predicted_monomials(&self) -> BigUint {
        let mut by_terms = BigUint::zero();
        let mut top_degree = BigUint::zero();
        for prod in &self.products {
            let mut count = BigUint::one();
            let mut deg = BigUint::zero();
            for &f in prod {
                let poly = &self.factors[f].poly;
                count *= BigUint::from(poly.len());
                if let Some(d) = poly.degree() {
                    deg += d;
                }
            }
            by_terms += count;
            top_degree = top_degree.max(deg);
        }
        by_terms.min(top_degree + 1u32)
    }

    /// The canonical polynomial this expression denotes.
    pub fn expand(&self, caps: &Caps) -> Result<SparsePoly> {
        let predicted = self.predicted_monomials();
        if predicted > BigUint::from(caps.max_monomials) {
            return Err(Error::cap(CapKind::Monomials, predicted, caps.max_monomials as u64));
        }
        let mut total = SparsePoly::zero();
        for prod in &self.products {
            let mut acc = SparsePoly::one();
            for &f in prod {
                acc = acc.mul(&self.factors[f].poly, caps.max_monomials)?;
                if acc.is_zero() {
                    break;
                }
            }
            total = &total + &acc;
        }
        Ok(total)
    }
}

fn reduce(a: &BigInt, q: Prime) -> u64 {
    reduce_coeff(a, q.get())
}
