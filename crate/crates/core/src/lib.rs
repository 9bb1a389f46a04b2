//! Exact arithmetic for sums of products of sparse univariate polynomials.
//!
//! The crate covers construction and measurement of such expressions,
//! evaluation without expansion, identity testing against structured point
//! sets and random primes, exact real-root counting, and the power
//! substitution that turns a depth-four formula into a univariate expression.

pub mod circuit;
pub mod coeff;
pub mod depth4;
mod dense;
pub mod error;
pub mod generators;
pub mod pit;
pub mod poly;
pub mod prime;
pub mod roots;
pub mod sps;

pub use coeff::SparseCoeff;
pub use depth4::{Atom, Depth4Formula};
pub use error::{CapKind, Error, Result};
pub use generators::{GeneratorKind, GeneratorSpec, HittingSet, HittingSetDescr};
pub use pit::{PitMethod, PitVerdict, Verdict, Witness};
pub use poly::{ring_op, RingOp, SparsePoly};
pub use prime::Prime;
pub use roots::{BoundCert, BoundKind, SpsRootCount};
pub use sps::{CoeffForm, Factor, SpsExpr, SpsParams};

/// Explicit resource limits for computations that can blow up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest monomial count a product or expansion may hold.
    pub max_monomials: usize,
    /// Largest bit length of an exact integer evaluation.
    pub max_eval_bits: u64,
    /// Largest degree handed to the Sturm-sequence root counter.
    pub sturm_degree: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_monomials: 1_000_000,
            max_eval_bits: 100_000_000,
            sturm_degree: 5000,
        }
    }
}
