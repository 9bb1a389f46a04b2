use thiserror::Error;

/// Which configured limit a computation ran into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapKind {
    /// Number of monomials in a product or expansion.
    Monomials,
    /// Bit length of an exact integer value.
    Bits,
    /// Degree handed to the Sturm machinery.
    SturmDegree,
}

impl std::fmt::Display for CapKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CapKind::Monomials => f.write_str("monomial count"),
            CapKind::Bits => f.write_str("bit size"),
            CapKind::SturmDegree => f.write_str("sturm degree"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `requested` is a decimal string because predicted sizes can be astronomically large.
    #[error("resource cap exceeded: {kind} would reach {requested}, limit is {limit}")]
    CapExceeded {
        kind: CapKind,
        requested: String,
        limit: u64,
    },
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("custom generator table has no entry for index {0}")]
    TableMiss(u64),
    #[error("unsupported kind: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no prime found in [{lo}, {hi}) after {attempts} attempts")]
    PrimeGeneration { lo: u64, hi: u64, attempts: u32 },
    /// A proven bound or an exactness guarantee failed. Always an implementation bug.
    #[error("hard fault: {0}")]
    HardFault(String),
}

impl Error {
    pub(crate) fn cap(kind: CapKind, requested: impl ToString, limit: u64) -> Self {
        Error::CapExceeded {
            kind,
            requested: requested.to_string(),
            limit,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
