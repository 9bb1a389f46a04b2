//! Fixed constructions with known root and identity-test behavior.

use num_bigint::BigInt;
use serde_json::{json, Value};
use sps_core::pit::{pit_exact, pit_hitting_set};
use sps_core::roots::{chebyshev, count_integer_roots, count_real_roots};
use sps_core::{Caps, GeneratorSpec, SparsePoly, SpsExpr};

use crate::error::{HarnessError, Result};
use crate::report::{pit_json, verdict_name};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Demo {
    /// `∏_{i=1}^{2^n} (x − i)`.
    Pochhammer,
    /// `T_{2^n}`.
    Chebyshev,
    /// `∏_{a=1}^{n} (x − a)` against the hitting set `{1, …, n}`.
    Eq1,
}

impl Demo {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "pochhammer" => Ok(Demo::Pochhammer),
            "chebyshev" => Ok(Demo::Chebyshev),
            "eq1" => Ok(Demo::Eq1),
            _ => Err(HarnessError::Usage(format!("unknown demo {name:?}"))),
        }
    }
}

fn pow2(n: u32) -> Result<u64> {
    1u64.checked_shl(n)
        .filter(|_| n < 32)
        .ok_or_else(|| HarnessError::Usage(format!("n = {n} is too large")))
}

fn root_report(name: &str, n: u32, p: &SparsePoly, caps: &Caps) -> Result<Value> {
    Ok(json!({
        "demo": name,
        "n": n,
        "degree": p.degree().map(|d| d.to_string()),
        "monomials": p.len(),
        "real_roots": count_real_roots(p, caps)?,
        "integer_roots": count_integer_roots(p, caps)?,
    }))
}

pub fn linear_product(m: u64) -> SpsExpr {
    let factors = (1..=m as i64).map(|a| SparsePoly::from_terms([(0u64, BigInt::from(-a)), (1, BigInt::from(1))]));
    SpsExpr::from_products(vec![factors.collect()]).expect("nonempty product")
}

pub fn run_demo(demo: Demo, n: u32, caps: &Caps) -> Result<Value> {
    match demo {
        Demo::Pochhammer => {
            let p = GeneratorSpec::linear().prefix_product(pow2(n)?, caps)?;
            root_report("pochhammer", n, &p, caps)
        }
        Demo::Chebyshev => {
            let p = chebyshev(pow2(n)?, caps)?;
            root_report("chebyshev", n, &p, caps)
        }
        Demo::Eq1 => {
            if n == 0 {
                return Err(HarnessError::Usage("eq1 needs n ≥ 1".into()));
            }
            let m = n as u64;
            let e = linear_product(m);
            let h = GeneratorSpec::linear().hitting_points(m)?;
            let hit = pit_hitting_set(&e, &h, caps)?;
            let exact = pit_exact(&e, caps)?;
            Ok(json!({
                "demo": "eq1",
                "n": n,
                "hitting": verdict_name(hit.verdict),
                "exact": verdict_name(exact.verdict),
                "hitting_detail": pit_json(&hit),
                "exact_detail": pit_json(&exact),
            }))
        }
    }
}
