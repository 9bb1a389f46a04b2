//! Arithmetic circuits as topologically ordered gate lists.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type GateId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gate {
    /// The `i`-th input variable.
    Input(usize),
    Constant(BigInt),
    Add(Vec<GateId>),
    Mul(Vec<GateId>),
}

/// Every gate refers only to earlier gates; the last gate is the output.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Circuit {
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, gate: Gate) -> Result<GateId> {
        let id = self.gates.len();
        Self::check(&gate, id)?;
        self.gates.push(gate);
        Ok(id)
    }

    fn check(gate: &Gate, id: GateId) -> Result<()> {
        if let Gate::Add(ch) | Gate::Mul(ch) = gate {
            if ch.is_empty() {
                return Err(Error::Malformed(format!("gate {id} has no children")));
            }
            if let Some(&c) = ch.iter().find(|&&c| c >= id) {
                return Err(Error::Malformed(format!("gate {id} refers forward to {c}")));
            }
        }
        Ok(())
    }

    /// Replaces gate `id`; the replacement may only use gates before `id`.
    pub fn replace(&mut self, id: GateId, gate: Gate) -> Result<()> {
        if id >= self.gates.len() {
            return Err(Error::Malformed(format!("no gate {id}")));
        }
        Self::check(&gate, id)?;
        self.gates[id] = gate;
        Ok(())
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Formal degree of every gate: inputs and constants 1, addition the
    /// maximum of its children, multiplication the sum.
    pub fn degrees(&self) -> Vec<u64> {
        let mut deg: Vec<u64> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let d = match g {
                Gate::Input(_) | Gate::Constant(_) => 1,
                Gate::Add(ch) => ch.iter().map(|&c| deg[c]).max().unwrap(),
                Gate::Mul(ch) => ch.iter().map(|&c| deg[c]).sum(),
            };
            deg.push(d);
        }
        deg
    }

    /// Formal degree of the output gate; 0 for the empty circuit.
    pub fn formal_degree(&self) -> u64 {
        self.degrees().last().copied().unwrap_or(0)
    }

    pub fn eval(&self, inputs: &[BigInt]) -> Result<BigInt> {
        let mut vals: Vec<BigInt> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match g {
                Gate::Input(i) => inputs
                    .get(*i)
                    .cloned()
                    .ok_or_else(|| Error::Malformed(format!("input {i} not supplied")))?,
                Gate::Constant(c) => c.clone(),
                Gate::Add(ch) => ch.iter().fold(BigInt::zero(), |a, &c| a + &vals[c]),
                Gate::Mul(ch) => ch.iter().fold(BigInt::one(), |a, &c| a * &vals[c]),
            };
            vals.push(v);
        }
        vals.pop().ok_or_else(|| Error::Malformed("empty circuit".into()))
    }
}
