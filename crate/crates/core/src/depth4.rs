//! ΣΠΣΠ formulas and the power substitution that maps them to SPS.
//!
//! Under `x_j ↦ x^(2^(j−1))` and `z_j ↦ 2^(2^(j−1))` every depth-1 product
//! becomes a monomial, every depth-2 sum a sparse factor, every depth-3
//! product an SPS product, and the output sum the SPS sum. Variable
//! indices are 1-based.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::circuit::{Circuit, Gate};
use crate::error::{CapKind, Error, Result};
use crate::poly::SparsePoly;
use crate::sps::{Factor, SpsExpr};
use crate::Caps;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    X(usize),
    Z(usize),
    Const(BigInt),
}

/// Depth-1 product of atoms.
pub type Leaf = Vec<Atom>;
/// Depth-2 sum of leaves.
pub type Block = Vec<Leaf>;
/// Depth-3 product of blocks.
pub type Term = Vec<Block>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Depth4Formula {
    x_arity: usize,
    z_arity: usize,
    terms: Vec<Term>,
}

impl Depth4Formula {
    /// Every gate needs at least one child and every index must be within its arity.
    pub fn new(x_arity: usize, z_arity: usize, terms: Vec<Term>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Malformed("output sum has no terms".into()));
        }
        for (ti, term) in terms.iter().enumerate() {
            if term.is_empty() {
                return Err(Error::Malformed(format!("term {ti} has no blocks")));
            }
            for (bi, block) in term.iter().enumerate() {
                if block.is_empty() {
                    return Err(Error::Malformed(format!("term {ti} block {bi} has no leaves")));
                }
                for (li, leaf) in block.iter().enumerate() {
                    if leaf.is_empty() {
                        return Err(Error::Malformed(format!("term {ti} block {bi} leaf {li} is empty")));
                    }
                    for atom in leaf {
                        let (idx, arity, name) = match atom {
                            Atom::X(j) => (*j, x_arity, "x"),
                            Atom::Z(j) => (*j, z_arity, "z"),
                            Atom::Const(_) => continue,
                        };
                        if idx == 0 || idx > arity {
                            return Err(Error::Malformed(format!("{name}{idx} outside arity {arity}")));
                        }
                    }
                }
            }
        }
        Ok(Depth4Formula { x_arity, z_arity, terms })
    }

    pub fn x_arity(&self) -> usize {
        self.x_arity
    }

    pub fn z_arity(&self) -> usize {
        self.z_arity
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn leaf_count(&self) -> usize {
        self.terms.iter().flatten().map(Vec::len).sum()
    }

    pub fn formal_degree(&self) -> u64 {
        self.terms
            .iter()
            .map(|term| {
                term.iter()
                    .map(|block| block.iter().map(|leaf| leaf.len() as u64).max().unwrap())
                    .sum::<u64>()
            })
            .max()
            .unwrap()
    }

    /// Gate-level form; inputs are `x_1..x_n` then `z_1..z_m`.
    pub fn to_circuit(&self) -> Circuit {
        let mut c = Circuit::new();
        let xs: Vec<_> = (0..self.x_arity).map(|i| c.push(Gate::Input(i)).unwrap()).collect();
        let zs: Vec<_> = (0..self.z_arity)
            .map(|i| c.push(Gate::Input(self.x_arity + i)).unwrap())
            .collect();
        let mut out = Vec::new();
        for term in &self.terms {
            let mut blocks = Vec::new();
            for block in term {
                let mut leaves = Vec::new();
                for leaf in block {
                    let atoms = leaf
                        .iter()
                        .map(|a| match a {
                            Atom::X(j) => xs[j - 1],
                            Atom::Z(j) => zs[j - 1],
                            Atom::Const(v) => c.push(Gate::Constant(v.clone())).unwrap(),
                        })
                        .collect();
                    leaves.push(c.push(Gate::Mul(atoms)).unwrap());
                }
                blocks.push(c.push(Gate::Add(leaves)).unwrap());
            }
            out.push(c.push(Gate::Mul(blocks)).unwrap());
        }
        c.push(Gate::Add(out)).unwrap();
        c
    }

    /// Exact value at the given variable assignment.
    pub fn eval(&self, xs: &[BigInt], zs: &[BigInt], caps: &Caps) -> Result<BigInt> {
        if xs.len() != self.x_arity || zs.len() != self.z_arity {
            return Err(Error::Precondition(format!(
                "expected {} x-values and {} z-values, got {} and {}",
                self.x_arity,
                self.z_arity,
                xs.len(),
                zs.len()
            )));
        }
        let mul = |acc: BigInt, v: &BigInt| -> Result<BigInt> {
            let bits = acc.bits() + v.bits();
            if bits > caps.max_eval_bits {
                return Err(Error::cap(CapKind::Bits, bits, caps.max_eval_bits));
            }
            Ok(acc * v)
        };
        let mut total = BigInt::zero();
        for term in &self.terms {
            let mut prod = BigInt::one();
            for block in term {
                let mut sum = BigInt::zero();
                for leaf in block {
                    let mut lv = BigInt::one();
                    for atom in leaf {
                        let v = match atom {
                            Atom::X(j) => &xs[j - 1],
                            Atom::Z(j) => &zs[j - 1],
                            Atom::Const(c) => c,
                        };
                        lv = mul(lv, v)?;
                    }
                    sum += lv;
                }
                prod = mul(prod, &sum)?;
            }
            total += prod;
        }
        Ok(total)
    }

    /// The assignment `x_j = a^(2^(j−1))`, `z_j = 2^(2^(j−1))` under which
    /// the formula and its substitution agree.
    pub fn coupled_point(&self, a: &BigInt, caps: &Caps) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
        let mut xs = Vec::with_capacity(self.x_arity);
        let mut pow = a.clone();
        for _ in 0..self.x_arity {
            xs.push(pow.clone());
            if pow.bits() * 2 > caps.max_eval_bits {
                return Err(Error::cap(CapKind::Bits, pow.bits() * 2, caps.max_eval_bits));
            }
            pow = &pow * &pow;
        }
        let zs = (0..self.z_arity)
            .map(|j| z_power(j + 1, caps).map(|e| BigInt::one() << e))
            .collect::<Result<_>>()?;
        Ok((xs, zs))
    }

    /// The univariate SPS expression obtained by the power substitution.
    /// Structurally equal blocks share one factor-table entry.
    pub fn substitute_powers(&self, caps: &Caps) -> Result<SpsExpr> {
        let mut table: Vec<Factor> = Vec::new();
        let mut seen: HashMap<&Block, usize> = HashMap::new();
        let mut products = Vec::with_capacity(self.terms.len());
        for term in &self.terms {
            let mut refs = Vec::with_capacity(term.len());
            for block in term {
                let id = match seen.get(block) {
                    Some(&id) => id,
                    None => {
                        table.push(Factor::new(block_factor(block, caps)?));
                        seen.insert(block, table.len() - 1);
                        table.len() - 1
                    }
                };
                refs.push(id);
            }
            products.push(refs);
        }
        SpsExpr::new(table, products)
    }
}

/// `2^(j−1)` as a shift amount, capped.
fn z_power(j: usize, caps: &Caps) -> Result<usize> {
    let shift = BigUint::one() << (j - 1);
    shift
        .to_u64()
        .filter(|&s| s < caps.max_eval_bits)
        .map(|s| s as usize)
        .ok_or_else(|| Error::cap(CapKind::Bits, &shift + 1u32, caps.max_eval_bits))
}

/// Leaves become monomials; colliding exponents merge.
fn block_factor(block: &Block, caps: &Caps) -> Result<SparsePoly> {
    let mut monomials = Vec::with_capacity(block.len());
    for leaf in block {
        let mut exp = BigUint::zero();
        let mut shift = 0usize;
        let mut coeff = BigInt::one();
        for atom in leaf {
            match atom {
                Atom::X(j) => exp += BigUint::one() << (j - 1),
                Atom::Z(j) => shift += z_power(*j, caps)?,
                Atom::Const(c) => coeff *= c,
            }
        }
        let bits = coeff.bits() + shift as u64;
        if bits > caps.max_eval_bits {
            return Err(Error::cap(CapKind::Bits, bits, caps.max_eval_bits));
        }
        monomials.push((exp, coeff << shift));
    }
    Ok(SparsePoly::from_terms(monomials))
}
