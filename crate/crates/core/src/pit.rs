//! Black-box identity testing of SPS expressions.
//!
//! Four deciders share one verdict type: explicit hitting sets (integer
//! points, or roots of unity handled by exponent folding), randomized
//! evaluation modulo large random primes, and exact expansion.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CapKind, Error, Result};
use crate::generators::{HittingSet, HittingSetDescr};
use crate::poly::{reduce_coeff, SparsePoly};
use crate::prime::Prime;
use crate::sps::SpsExpr;
use crate::Caps;

/// Integer witnesses are materialized only up to this many bits; beyond
/// it a nonzero screening residue is the witness.
const EXACT_WITNESS_BITS: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Zero,
    Nonzero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PitMethod {
    HittingSet,
    RandomMod,
    Exact,
}

impl PitMethod {
    pub fn name(self) -> &'static str {
        match self {
            PitMethod::HittingSet => "hitting",
            PitMethod::RandomMod => "random",
            PitMethod::Exact => "exact",
        }
    }
}

/// Evidence that an expression is not identically zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `E(point) = value ≠ 0`.
    Integer { point: BigInt, value: BigInt },
    /// `E(point) ≡ value ≢ 0 (mod prime)`.
    Residue { point: BigInt, prime: Prime, value: u64 },
    /// `E mod (x^order − 1) = remainder ≠ 0`, so `E` is nonzero at some root of `x^order − 1`.
    UnityFold { order: u64, remainder: SparsePoly },
}

impl Witness {
    /// Re-evaluates the expression and checks the recorded nonzero value.
    pub fn verify(&self, expr: &SpsExpr, caps: &Caps) -> Result<bool> {
        Ok(match self {
            Witness::Integer { point, value } => {
                !value.is_zero() && expr.eval_integer(point, caps)? == *value
            }
            Witness::Residue { point, prime, value } => {
                *value != 0 && expr.eval_mod(reduce_coeff(point, prime.get()), *prime) == *value
            }
            Witness::UnityFold { order, remainder } => {
                !remainder.is_zero() && fold_remainder(expr, *order, caps)? == *remainder
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Trial {
    pub prime: Prime,
    pub point: u64,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PitVerdict {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub method: PitMethod,
    pub seed: Option<u64>,
    /// Primes used for screening or random trials.
    pub primes: Vec<Prime>,
    /// Random-evaluation transcript, for replay.
    pub trials: Vec<Trial>,
    /// Upper bound on the probability that a zero verdict is wrong.
    pub error_bound: Option<f64>,
}

impl PitVerdict {
    fn new(method: PitMethod) -> Self {
        PitVerdict {
            verdict: Verdict::Zero,
            witness: None,
            method,
            seed: None,
            primes: Vec::new(),
            trials: Vec::new(),
            error_bound: None,
        }
    }

    fn nonzero(mut self, witness: Witness) -> Self {
        self.verdict = Verdict::Nonzero;
        self.witness = Some(witness);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.verdict == Verdict::Zero
    }
}

/// Prime window and retry budget for randomized testing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomPitConfig {
    pub lo: u64,
    pub hi: u64,
    pub attempts: u32,
}

impl Default for RandomPitConfig {
    fn default() -> Self {
        RandomPitConfig {
            lo: 1 << 61,
            hi: 1 << 62,
            attempts: 100_000,
        }
    }
}

/// The three largest primes below `2^62`, used to screen integer points.
pub fn screening_primes() -> &'static [Prime; 3] {
    static PRIMES: OnceLock<[Prime; 3]> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let a = Prime::below(1 << 62).unwrap();
        let b = Prime::below(a.get()).unwrap();
        let c = Prime::below(b.get()).unwrap();
        [a, b, c]
    })
}

/// Value of `E` at an integer point: modular screening first, exact
/// big-integer evaluation only when every screening residue is zero.
fn probe_point(expr: &SpsExpr, point: &BigInt, caps: &Caps) -> Result<Option<Witness>> {
    for &q in screening_primes() {
        let r = expr.eval_mod(reduce_coeff(point, q.get()), q);
        if r != 0 {
            let small = Caps {
                max_eval_bits: caps.max_eval_bits.min(EXACT_WITNESS_BITS),
                ..*caps
            };
            return Ok(Some(match expr.eval_integer(point, &small) {
                Ok(value) => Witness::Integer { point: point.clone(), value },
                Err(_) => Witness::Residue { point: point.clone(), prime: q, value: r },
            }));
        }
    }
    let value = expr.eval_integer(point, caps)?;
    Ok((!value.is_zero()).then(|| Witness::Integer { point: point.clone(), value }))
}

/// `E mod (x^order − 1)`, computed factor by factor without expanding `E`.
pub fn fold_remainder(expr: &SpsExpr, order: u64, caps: &Caps) -> Result<SparsePoly> {
    if order == 0 {
        return Err(Error::Precondition("root-of-unity order must be positive".into()));
    }
    let n = order
        .to_usize()
        .filter(|&n| n <= caps.max_monomials)
        .ok_or_else(|| Error::cap(CapKind::Monomials, order, caps.max_monomials as u64))?;
    let folded: Vec<Vec<(usize, BigInt)>> = expr
        .factors()
        .iter()
        .map(|f| {
            f.poly()
                .fold(order)
                .terms()
                .iter()
                .map(|(e, c)| (e.to_usize().unwrap(), c.clone()))
                .collect()
        })
        .collect();
    let mut total = vec![BigInt::zero(); n];
    for prod in expr.products() {
        let mut acc = vec![BigInt::zero(); n];
        acc[0] = BigInt::from(1);
        for &f in prod {
            let mut next = vec![BigInt::zero(); n];
            for (i, a) in acc.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                for (e, c) in &folded[f] {
                    let j = (i + e) % n;
                    next[j] += a * c;
                }
            }
            acc = next;
        }
        for (t, a) in total.iter_mut().zip(acc) {
            *t += a;
        }
    }
    Ok(SparsePoly::from_terms(total.into_iter().enumerate().map(|(i, c)| (i as u64, c))))
}

/// Decides whether `E` vanishes on every point of `H`.
///
/// A zero verdict means only that; `E` itself may be nonzero.
pub fn pit_hitting_set(expr: &SpsExpr, hitting: &HittingSetDescr, caps: &Caps) -> Result<PitVerdict> {
    let mut verdict = PitVerdict::new(PitMethod::HittingSet);
    match &hitting.set {
        HittingSet::IntegerPoints(points) => {
            verdict.primes = screening_primes().to_vec();
            for a in points {
                if let Some(w) = probe_point(expr, a, caps)? {
                    return Ok(verdict.nonzero(w));
                }
            }
        }
        HittingSet::UnityRoots(orders) => {
            for &order in orders {
                let remainder = fold_remainder(expr, order, caps)?;
                if !remainder.is_zero() {
                    return Ok(verdict.nonzero(Witness::UnityFold { order, remainder }));
                }
            }
        }
    }
    Ok(verdict)
}

/// Randomized test: each trial evaluates at a uniform point modulo a
/// random prime `q > 2D`, where `D = s · deg_max` bounds the degree.
///
/// One-sided: a nonzero verdict is always correct.
pub fn pit_random_mod(expr: &SpsExpr, trials: u32, seed: u64, cfg: &RandomPitConfig) -> Result<PitVerdict> {
    if trials == 0 {
        return Err(Error::Precondition("at least one trial required".into()));
    }
    let degree = expr.measure().degree_bound();
    let floor = (&degree * 2u32 + 1u32).to_u64().filter(|&f| f < cfg.hi).ok_or_else(|| {
        Error::Precondition(format!("degree bound {degree} leaves no prime above 2D below {}", cfg.hi))
    })?;
    let lo = cfg.lo.max(floor);
    let mut verdict = PitVerdict::new(PitMethod::RandomMod);
    verdict.seed = Some(seed);
    let mut bound = 1f64;
    let d = degree.to_f64().unwrap_or(f64::INFINITY);
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t as u64);
        let q = Prime::random_in(&mut rng, lo, cfg.hi, cfg.attempts)?;
        let point = rng.gen_range(0..q.get());
        let value = expr.eval_mod(point, q);
        verdict.primes.push(q);
        verdict.trials.push(Trial { prime: q, point, value });
        if value != 0 {
            return Ok(verdict.nonzero(Witness::Residue {
                point: BigInt::from(point),
                prime: q,
                value,
            }));
        }
        bound *= d / q.get() as f64;
    }
    verdict.error_bound = Some(bound.min(1.0));
    Ok(verdict)
}

/// Ground truth via expansion.
pub fn pit_exact(expr: &SpsExpr, caps: &Caps) -> Result<PitVerdict> {
    let poly = expr.expand(caps)?;
    let verdict = PitVerdict::new(PitMethod::Exact);
    if poly.is_zero() {
        return Ok(verdict);
    }
    Ok(verdict.nonzero(nonzero_witness(&poly, caps)?))
}

/// A point where a nonzero polynomial does not vanish.
///
/// A polynomial with `t` monomials has at most `2t − 1` real roots, so
/// `2t` small integers always contain a witness unless evaluation hits the
/// bit cap; then residues modulo the screening primes are tried.
pub fn nonzero_witness(poly: &SparsePoly, caps: &Caps) -> Result<Witness> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let small = Caps {
        max_eval_bits: caps.max_eval_bits.min(EXACT_WITNESS_BITS),
        ..*caps
    };
    let candidates = (0..=poly.len() as i64).flat_map(|a| if a == 0 { vec![0] } else { vec![a, -a] });
    for a in candidates {
        let point = BigInt::from(a);
        match poly.eval_integer(&point, small.max_eval_bits) {
            Ok(v) if !v.is_zero() => return Ok(Witness::Integer { point, value: v }),
            Ok(_) => continue,
            Err(_) => break,
        }
    }
    for &q in screening_primes() {
        for a in 2..64u64 {
            let value = poly.eval_mod_prime(a, q);
            if value != 0 {
                return Ok(Witness::Residue { point: BigInt::from(a), prime: q, value });
            }
        }
    }
    Err(Error::HardFault("nonzero polynomial vanished on every witness candidate".into()))
}

/// Evaluates `E` on more than `s · deg_max` distinct points and confirms a
/// nonzero value; more points than the degree bound always suffice.
pub fn sufficiency_check(expr: &SpsExpr, points: &[BigInt], caps: &Caps) -> Result<bool> {
    let bound = expr.measure().degree_bound();
    if BigUint::from(points.len()) <= bound {
        return Err(Error::Precondition(format!(
            "{} points do not exceed the degree bound {bound}",
            points.len()
        )));
    }
    if points.iter().collect::<BTreeSet<_>>().len() != points.len() {
        return Err(Error::Precondition("points must be distinct".into()));
    }
    if pit_exact(expr, caps)?.is_zero() {
        return Err(Error::Precondition("expression is identically zero".into()));
    }
    for a in points {
        if probe_point(expr, a, caps)?.is_some() {
            return Ok(true);
        }
    }
    Err(Error::HardFault(format!(
        "nonzero expression vanished on {} points above its degree bound {bound}",
        points.len()
    )))
}
