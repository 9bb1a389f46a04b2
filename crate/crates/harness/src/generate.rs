//! Random SPS instances on a uniform parameter grid.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use rand::Rng;
use sps_core::pit::{pit_exact, pit_random_mod, RandomPitConfig};
use sps_core::{Caps, PitVerdict, SparsePoly, SpsExpr};

use crate::error::{HarnessError, Result};

/// Rejection budget for drawing a nonzero expression.
const MAX_DRAWS: u32 = 1000;
const RANDOM_TRIALS: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub k: RangeInclusive<usize>,
    pub m: RangeInclusive<usize>,
    pub t: RangeInclusive<usize>,
    pub coeff_bound: u64,
    pub exp_bound: u64,
}

impl Grid {
    pub fn validate(&self) -> Result<()> {
        for (name, r) in [("k", &self.k), ("m", &self.m), ("t", &self.t)] {
            if r.is_empty() || *r.start() == 0 {
                return Err(HarnessError::Usage(format!("{name} range must be nonempty and positive")));
            }
        }
        if self.coeff_bound == 0 {
            return Err(HarnessError::Usage("coefficient bound must be positive".into()));
        }
        if (*self.t.end() as u128) > self.exp_bound as u128 + 1 {
            return Err(HarnessError::Usage(format!(
                "t up to {} needs an exponent bound of at least {}",
                self.t.end(),
                self.t.end() - 1
            )));
        }
        Ok(())
    }
}

/// A nonzero instance together with the identity test that certified it.
#[derive(Debug, Clone)]
pub struct Sample {
    pub expr: SpsExpr,
    pub pit: PitVerdict,
}

fn factor<R: Rng>(t: usize, grid: &Grid, rng: &mut R) -> SparsePoly {
    let mut exps = BTreeSet::new();
    while exps.len() < t {
        exps.insert(rng.gen_range(0..=grid.exp_bound));
    }
    let c = grid.coeff_bound as i64;
    SparsePoly::from_terms(exps.into_iter().map(|e| {
        let mut v = 0;
        while v == 0 {
            v = rng.gen_range(-c..=c);
        }
        (BigUint::from(e), BigInt::from(v))
    }))
}

/// Draws `(k, m, t)` uniformly from the grid, then `k·m` independent factors
/// with `t` distinct exponents and nonzero coefficients. Identically zero
/// draws are rejected: by expansion when the predicted size fits the caps,
/// else by randomized modular testing.
pub fn generate_instance<R: Rng>(grid: &Grid, rng: &mut R, caps: &Caps) -> Result<Sample> {
    grid.validate()?;
    for _ in 0..MAX_DRAWS {
        let k = rng.gen_range(grid.k.clone());
        let m = rng.gen_range(grid.m.clone());
        let t = rng.gen_range(grid.t.clone());
        let products = (0..k).map(|_| (0..m).map(|_| factor(t, grid, rng)).collect()).collect();
        let expr = SpsExpr::from_products(products)?;
        let pit = if expr.predicted_monomials() <= BigUint::from(caps.max_monomials) {
            pit_exact(&expr, caps)?
        } else {
            pit_random_mod(&expr, RANDOM_TRIALS, rng.gen(), &RandomPitConfig::default())?
        };
        if !pit.is_zero() {
            return Ok(Sample { expr, pit });
        }
    }
    Err(HarnessError::Core(sps_core::Error::HardFault(format!(
        "no nonzero instance in {MAX_DRAWS} draws"
    ))))
}
