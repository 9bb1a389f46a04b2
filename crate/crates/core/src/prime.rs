//! 64-bit modular arithmetic and deterministic Miller–Rabin.

use rand::Rng;

use crate::error::{Error, Result};

/// Witness bases that make Miller–Rabin deterministic for every `n < 2^64`.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
pub fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 + b as u128) % q as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    if q == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A modulus known to be prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(q: u64) -> Result<Self> {
        if is_prime(q) {
            Ok(Prime(q))
        } else {
            Err(Error::NotPrime(q))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Largest prime strictly below `n`.
    pub fn below(n: u64) -> Option<Self> {
        (2..n).rev().find(|&c| is_prime(c)).map(Prime)
    }

    /// Uniform prime in `[lo, hi)` by rejection sampling.
    pub fn random_in<R: Rng + ?Sized>(rng: &mut R, lo: u64, hi: u64, attempts: u32) -> Result<Self> {
        if lo >= hi {
            return Err(Error::PrimeGeneration { lo, hi, attempts: 0 });
        }
        for _ in 0..attempts {
            let c = rng.gen_range(lo..hi);
            if is_prime(c) {
                return Ok(Prime(c));
            }
        }
        Err(Error::PrimeGeneration { lo, hi, attempts })
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}
