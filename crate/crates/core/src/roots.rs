//! Exact real- and integer-root counting, plus the proven root bounds for
//! SPS expressions.
//!
//! Counts are of distinct roots. The polynomial is reduced to its
//! square-free part before a Sturm sequence is built; every remainder is
//! replaced by its primitive part, so all arithmetic stays in ℤ.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dense::{self, Dense};
use crate::error::{CapKind, Error, Result};
use crate::poly::SparsePoly;
use crate::sps::SpsExpr;
use crate::Caps;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// `2m(t−1) + 1` real roots for a single product (`k = 1`).
    DescartesProduct,
    /// `2k·t^m − 1` real roots after expansion.
    ExpansionSum,
    /// `2t − 2` nonzero real roots of one `t`-monomial factor.
    DescartesSingle,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::DescartesProduct => "descartes_product",
            BoundKind::ExpansionSum => "expansion_sum",
            BoundKind::DescartesSingle => "descartes_single",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCert {
    pub kind: BoundKind,
    pub value: BigUint,
    pub k: u64,
    pub m: u64,
    pub t: u64,
}

/// The formulaic bound; never looks at a polynomial.
pub fn bound(kind: BoundKind, k: u64, m: u64, t: u64) -> Result<BoundCert> {
    if k == 0 || m == 0 || t == 0 {
        return Err(Error::Precondition("k, m and t must be at least 1".into()));
    }
    let value = match kind {
        BoundKind::DescartesProduct => {
            if k != 1 {
                return Err(Error::Precondition(format!("descartes_product needs k = 1, got {k}")));
            }
            BigUint::from(2 * m * (t - 1) + 1)
        }
        BoundKind::ExpansionSum => BigUint::from(2 * k) * num_traits::pow(BigUint::from(t), m as usize) - 1u32,
        BoundKind::DescartesSingle => BigUint::from(2 * t - 2),
    };
    Ok(BoundCert { kind, value, k, m, t })
}

/// Square-free Sturm data for a nonzero polynomial with `x^v` divided out.
struct Sturm {
    zero_root: bool,
    chain: Vec<Dense>,
}

impl Sturm {
    fn new(p: &SparsePoly, caps: &Caps) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if sturm_degree(p, caps).is_none() {
            return Err(Error::cap(CapKind::SturmDegree, p.degree().unwrap(), caps.sturm_degree as u64));
        }
        let v = p.valuation().unwrap().clone();
        let zero_root = !v.is_zero();
        let reduced = SparsePoly::from_terms(p.terms().iter().map(|(e, c)| (e - &v, c.clone())));
        let sf = dense::square_free(&reduced.to_dense(caps.sturm_degree)?);
        let mut chain = vec![sf.clone()];
        let d = dense::derivative(&sf);
        if !d.is_empty() {
            chain.push(dense::primitive_part(d));
            loop {
                let n = chain.len();
                let (r, negative) = dense::pseudo_rem(&chain[n - 2], &chain[n - 1]);
                if r.is_empty() {
                    break;
                }
                let next = if negative { r } else { r.into_iter().map(|c| -c).collect() };
                chain.push(dense::primitive_part(next));
            }
        }
        Ok(Sturm { zero_root, chain })
    }

    fn square_free(&self) -> &Dense {
        &self.chain[0]
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn at_pos_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| dense::sign_of(p.last().unwrap())))
    }

    fn at_neg_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let s = dense::sign_of(p.last().unwrap());
            if (p.len() - 1) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    fn at(&self, n: &BigInt) -> usize {
        Self::variations(self.chain.iter().map(|p| dense::sign_at(p, n)))
    }

    /// Distinct roots of the reduced polynomial in `(lo, hi]`.
    fn count_in(&self, lo: &BigInt, hi: &BigInt) -> usize {
        self.at(lo) - self.at(hi)
    }

    fn count_nonzero_real(&self) -> usize {
        self.at_neg_inf() - self.at_pos_inf()
    }

    /// `1 + max |a_i|` bounds every root since the leading coefficient is a nonzero integer.
    fn root_bound(&self) -> BigInt {
        self.square_free().iter().map(|c| c.abs()).max().unwrap_or_default() + 1
    }

    fn integer_roots(&self) -> usize {
        // a nonzero integer root divides the constant term, which is nonzero here
        let b = self.root_bound().min(self.square_free()[0].abs());
        let mut found = self.zero_root as usize;
        let lo: BigInt = -(&b + 1u32);
        self.integer_roots_in(lo, b, &mut found);
        found
    }

    fn integer_roots_in(&self, lo: BigInt, hi: BigInt, found: &mut usize) {
        if self.count_in(&lo, &hi) == 0 {
            return;
        }
        if &hi - &lo == BigInt::one() {
            if dense::eval(self.square_free(), &hi).is_zero() {
                *found += 1;
            }
            return;
        }
        let mid: BigInt = num_integer::Integer::div_floor(&(&lo + &hi), &BigInt::from(2));
        self.integer_roots_in(lo, mid.clone(), found);
        self.integer_roots_in(mid, hi, found);
    }
}

/// Number of distinct real roots.
pub fn count_real_roots(p: &SparsePoly, caps: &Caps) -> Result<usize> {
    let s = Sturm::new(p, caps)?;
    Ok(s.count_nonzero_real() + s.zero_root as usize)
}

/// Number of distinct positive real roots.
pub fn count_positive_roots(p: &SparsePoly, caps: &Caps) -> Result<usize> {
    let s = Sturm::new(p, caps)?;
    // the reduced polynomial does not vanish at 0
    Ok(s.at(&BigInt::zero()) - s.at_pos_inf())
}

/// Number of distinct integer roots, by Sturm bisection over integer
/// intervals followed by an exact check of the single candidate left in
/// each unit interval.
pub fn count_integer_roots(p: &SparsePoly, caps: &Caps) -> Result<usize> {
    Ok(Sturm::new(p, caps)?.integer_roots())
}

/// Distinct real and integer roots from a single Sturm sequence.
pub fn count_real_and_integer_roots(p: &SparsePoly, caps: &Caps) -> Result<(usize, usize)> {
    let s = Sturm::new(p, caps)?;
    Ok((s.count_nonzero_real() + s.zero_root as usize, s.integer_roots()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpsRootCount {
    /// Distinct real roots of the expansion.
    pub real: usize,
    /// Every proven bound that applies to the measured parameters.
    pub certs: Vec<BoundCert>,
    /// `real / (k·m·t)`.
    pub ratio: f64,
    /// `k · (2m(t−1) + 1)`: the single-product bound summed over products.
    /// Not a theorem for `k ≥ 2`; reaching it marks an instance worth keeping.
    pub envelope: u64,
    pub record: bool,
}

/// Bound certificates applicable to an expression with these parameters.
pub fn applicable_bounds(k: u64, m: u64, t: u64) -> Result<Vec<BoundCert>> {
    let mut certs = Vec::new();
    if k == 1 {
        certs.push(bound(BoundKind::DescartesProduct, k, m, t)?);
    }
    certs.push(bound(BoundKind::ExpansionSum, k, m, t)?);
    Ok(certs)
}

/// Exact root count of `expand(E)` checked against every proven bound.
///
/// Exceeding a proven bound is a hard fault: the bounds are theorems, so
/// the implementation is wrong.
pub fn count_real_roots_sps(expr: &SpsExpr, caps: &Caps) -> Result<SpsRootCount> {
    // same decision as pit_exact, without expanding twice
    let poly = expr.expand(caps)?;
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let real = count_real_roots(&poly, caps)?;
    let params = expr.measure();
    let (k, m, t) = (params.k as u64, params.m as u64, params.t as u64);
    let certs = applicable_bounds(k, m, t)?;
    check_certs(real, &certs)?;
    let envelope = k * (2 * m * (t - 1) + 1);
    Ok(SpsRootCount {
        real,
        certs,
        ratio: real as f64 / (k * m * t) as f64,
        envelope,
        record: real as u64 >= envelope,
    })
}

/// Hard fault if `count` exceeds any certificate.
pub fn check_certs(count: usize, certs: &[BoundCert]) -> Result<()> {
    for c in certs {
        if BigUint::from(count) > c.value {
            return Err(Error::HardFault(format!(
                "{count} real roots exceed proven {} bound {} (k={}, m={}, t={})",
                c.kind.name(),
                c.value,
                c.k,
                c.m,
                c.t
            )));
        }
    }
    Ok(())
}

/// Chebyshev polynomial `T_n` from `T_{n+1} = 2x·T_n − T_{n−1}`.
pub fn chebyshev(n: u64, caps: &Caps) -> Result<SparsePoly> {
    let mut prev = SparsePoly::one();
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = SparsePoly::x();
    let two = BigInt::from(2);
    for _ in 1..n {
        let next = &cur.shift(&BigUint::one()).scale(&two) - &prev;
        if next.len() > caps.max_monomials {
            return Err(Error::cap(CapKind::Monomials, next.len(), caps.max_monomials as u64));
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Degree of `p` as a `usize` when it fits under the Sturm cap.
pub fn sturm_degree(p: &SparsePoly, caps: &Caps) -> Option<usize> {
    p.degree()?.to_usize().filter(|&d| d <= caps.sturm_degree)
}
