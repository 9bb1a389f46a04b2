//! Dense integer polynomials used by the root counter. Index = exponent,
//! no trailing zeros; the empty vector is zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::prime::{mul_mod, pow_mod};

pub(crate) type Dense = Vec<BigInt>;

pub(crate) fn trim(p: &mut Dense) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn degree(p: &Dense) -> Option<usize> {
    p.len().checked_sub(1)
}

pub(crate) fn derivative(p: &Dense) -> Dense {
    let mut d: Dense = p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    trim(&mut d);
    d
}

/// Positive gcd of the coefficients.
///
/// One gcd against a weighted sum of all coefficients usually gives the
/// content already; every coefficient is then checked by division and any
/// that is not a multiple is folded in.
pub(crate) fn content(p: &Dense) -> BigInt {
    let nonzero: Vec<&BigInt> = p.iter().filter(|c| !c.is_zero()).collect();
    let Some(smallest) = nonzero.iter().min_by_key(|c| c.bits()) else {
        return BigInt::zero();
    };
    let mut g = smallest.abs();
    if g.is_one() {
        return g;
    }
    let mut mix = BigInt::zero();
    for (i, c) in nonzero.iter().enumerate() {
        mix += *c * (2 * i as u64 + 1);
    }
    g = g.gcd(&(mix % &g));
    for c in nonzero {
        if g.is_one() {
            break;
        }
        let r = c % &g;
        if !r.is_zero() {
            g = g.gcd(&r);
        }
    }
    g
}

/// Divides out the positive content; the sign of the leading coefficient is kept.
pub(crate) fn primitive_part(mut p: Dense) -> Dense {
    let g = content(&p);
    if !g.is_zero() && !g.is_one() {
        for c in &mut p {
            *c /= &g;
        }
    }
    p
}

/// Pseudo-remainder: `lc(b)^(deg a − deg b + 1) · a = q·b + r` with `deg r < deg b`.
/// Returns `(r, multiplier_is_negative)`.
pub(crate) fn pseudo_rem(a: &Dense, b: &Dense) -> (Dense, bool) {
    let db = degree(b).expect("pseudo-division by zero");
    let lc = b[db].clone();
    let mut r = a.clone();
    let mut steps = 0usize;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lc;
        }
        let shift = dr - db;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &lr * c;
        }
        trim(&mut r);
        steps += 1;
    }
    let total = degree(a).map_or(0, |da| if da >= db { da - db + 1 } else { 0 });
    // pad to the canonical exponent so the multiplier is fixed
    for _ in steps..total {
        for c in r.iter_mut() {
            *c *= &lc;
        }
    }
    let negative = lc.is_negative() && total % 2 == 1;
    (r, negative)
}

/// Exact quotient `a / b` in ℤ[x]; `b` divides `a` over ℤ.
pub(crate) fn exact_div(a: &Dense, b: &Dense) -> Dense {
    let db = degree(b).expect("division by zero polynomial");
    let Some(da) = degree(a) else {
        return Vec::new();
    };
    if da < db {
        return Vec::new();
    }
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let top = &r[k + db];
        if top.is_zero() {
            continue;
        }
        let (coef, rem) = top.div_rem(&b[db]);
        debug_assert!(rem.is_zero(), "inexact division");
        for (i, c) in b.iter().enumerate() {
            r[i + k] -= &coef * c;
        }
        q[k] = coef;
    }
    trim(&mut q);
    q
}

/// Greatest common divisor up to a unit, via the primitive remainder sequence.
pub(crate) fn gcd(a: &Dense, b: &Dense) -> Dense {
    let (mut x, mut y) = (primitive_part(a.clone()), primitive_part(b.clone()));
    if degree(&x) < degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let (r, _) = pseudo_rem(&x, &y);
        x = y;
        y = primitive_part(r);
    }
    x
}

/// `p / gcd(p, p')`, primitive with positive leading coefficient.
pub(crate) fn square_free(p: &Dense) -> Dense {
    let mut sf = square_free_part(p);
    if sf.last().is_some_and(Signed::is_negative) {
        for c in &mut sf {
            *c = -&*c;
        }
    }
    sf
}

fn square_free_part(p: &Dense) -> Dense {
    let p = primitive_part(p.clone());
    let d = derivative(&p);
    if d.is_empty() || coprime_mod(&p, &d) {
        return p;
    }
    let g = gcd(&p, &d);
    if degree(&g) == Some(0) {
        return p;
    }
    primitive_part(exact_div(&p, &g))
}

/// Primes below `2^62` tried for the modular coprimality certificate.
const CERT_PRIMES: [u64; 2] = [4_611_686_018_427_387_847, 4_611_686_018_427_387_817];

/// Certifies `gcd(a, b) = 1` over ℚ by a constant gcd modulo a prime not
/// dividing `lc(a)`. `false` means only that no certificate was found.
fn coprime_mod(a: &Dense, b: &Dense) -> bool {
    CERT_PRIMES.iter().any(|&q| {
        let reduce = |p: &Dense| -> Vec<u64> {
            let qb = BigInt::from(q);
            let mut v: Vec<u64> = p.iter().map(|c| c.mod_floor(&qb).to_u64().unwrap()).collect();
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        };
        let (x, y) = (reduce(a), reduce(b));
        if x.len() != a.len() {
            return false;
        }
        gcd_degree_mod(x, y, q) == Some(0)
    })
}

/// Degree of `gcd(x, y)` over `F_q`; `None` if both are zero.
fn gcd_degree_mod(mut x: Vec<u64>, mut y: Vec<u64>, q: u64) -> Option<usize> {
    while !y.is_empty() {
        let inv = pow_mod(*y.last().unwrap(), q - 2, q);
        let dy = y.len() - 1;
        while x.len() > dy {
            let dx = x.len() - 1;
            let f = mul_mod(*x.last().unwrap(), inv, q);
            for (i, &c) in y.iter().enumerate() {
                let t = mul_mod(f, c, q);
                let slot = &mut x[i + dx - dy];
                *slot = if *slot >= t { *slot - t } else { *slot + q - t };
            }
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    x.len().checked_sub(1)
}

/// Sign of `p(n)` for an integer `n`.
pub(crate) fn sign_at(p: &Dense, n: &BigInt) -> i8 {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * n + c;
    }
    sign_of(&acc)
}

pub(crate) fn sign_of(v: &BigInt) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_negative() {
        -1
    } else {
        1
    }
}

pub(crate) fn eval(p: &Dense, n: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * n + c;
    }
    acc
}
