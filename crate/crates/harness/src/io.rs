//! JSON instance files.
//!
//! Parsing is strict: unknown keys, non-canonical integer literals, zero
//! coefficients and unsorted exponents are rejected, so parsing a file and
//! serializing the result reproduces canonical files byte for byte.

use std::path::Path;

use num_bigint::{BigInt, BigUint};
use serde_json::{json, Map, Value};
use sps_core::depth4::{Block, Leaf, Term};
use sps_core::{Atom, CoeffForm, Depth4Formula, Factor, SparseCoeff, SpsExpr};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Sps(SpsExpr),
    Depth4(Depth4Formula),
}

impl Instance {
    /// The SPS view, substituting powers for depth-4 formulas.
    pub fn into_sps(self, caps: &sps_core::Caps) -> Result<SpsExpr> {
        match self {
            Instance::Sps(e) => Ok(e),
            Instance::Depth4(f) => Ok(f.substitute_powers(caps)?),
        }
    }
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    parse_instance(&text)
}

pub fn write_instance(path: &Path, inst: &Instance) -> Result<()> {
    std::fs::write(path, serialize_instance(inst)).map_err(|e| HarnessError::io(path, e))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let v: Value = serde_json::from_str(text).map_err(|e| HarnessError::Syntax {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    let obj = object(&v, "$")?;
    match obj.get("kind").and_then(Value::as_str) {
        Some("sps") => parse_sps(obj).map(Instance::Sps),
        Some("depth4") => parse_depth4(obj).map(Instance::Depth4),
        Some(other) => Err(HarnessError::schema("kind", format!("unknown kind {other:?}"))),
        None => Err(HarnessError::schema("kind", "missing string field")),
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn serialize_instance(inst: &Instance) -> String {
    let v = match inst {
        Instance::Sps(e) => sps_value(e),
        Instance::Depth4(f) => depth4_value(f),
    };
    let mut s = serde_json::to_string_pretty(&v).expect("json values always serialize");
    s.push('\n');
    s
}

pub fn sps_value(e: &SpsExpr) -> Value {
    let factors: Vec<Value> = e
        .factors()
        .iter()
        .map(|f| {
            let monomials: Vec<Value> = f
                .poly()
                .terms()
                .iter()
                .zip(f.explicit_digits())
                .map(|((exp, c), d)| {
                    let coeff = match d {
                        Some(d) => json!({ "plus": d.plus(), "minus": d.minus() }),
                        None => Value::String(c.to_string()),
                    };
                    json!({ "coeff": coeff, "exp": exp.to_string() })
                })
                .collect();
            json!({ "monomials": monomials })
        })
        .collect();
    json!({ "kind": "sps", "factors": factors, "products": e.products() })
}

fn depth4_value(f: &Depth4Formula) -> Value {
    let atom = |a: &Atom| match a {
        Atom::X(j) => json!({ "x": j }),
        Atom::Z(j) => json!({ "z": j }),
        Atom::Const(c) => json!({ "const": c.to_string() }),
    };
    let terms: Vec<Value> = f
        .terms()
        .iter()
        .map(|t| {
            Value::Array(
                t.iter()
                    .map(|b| Value::Array(b.iter().map(|l| Value::Array(l.iter().map(atom).collect())).collect()))
                    .collect(),
            )
        })
        .collect();
    json!({ "kind": "depth4", "x_arity": f.x_arity(), "z_arity": f.z_arity(), "terms": terms })
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| HarnessError::schema(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| HarnessError::schema(path, "expected an array"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| HarnessError::schema(&join(path, key), "missing field"))
}

fn only_keys(obj: &Map<String, Value>, keys: &[&str], path: &str) -> Result<()> {
    match obj.keys().find(|k| !keys.contains(&k.as_str())) {
        Some(k) => Err(HarnessError::schema(&join(path, k), "unknown field")),
        None => Ok(()),
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() || path == "$" {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn index_u64(v: &Value, path: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| HarnessError::schema(path, "expected a nonnegative integer"))
}

fn usize_field(v: &Value, path: &str) -> Result<usize> {
    usize::try_from(index_u64(v, path)?).map_err(|_| HarnessError::schema(path, "index out of range"))
}

/// `0`, or a nonzero digit followed by digits, optionally preceded by `-` (but not `-0`).
pub fn parse_int(s: &str, path: &str) -> Result<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    let canonical = match digits.as_bytes() {
        [] => false,
        [b'0'] => digits.len() == s.len(),
        [first, rest @ ..] => (b'1'..=b'9').contains(first) && rest.iter().all(u8::is_ascii_digit),
    };
    if !canonical {
        return Err(HarnessError::schema(path, format!("non-canonical integer literal {s:?}")));
    }
    Ok(s.parse().expect("validated decimal literal"))
}

fn parse_nat(s: &str, path: &str) -> Result<BigUint> {
    if s.starts_with('-') {
        return Err(HarnessError::schema(path, format!("expected a nonnegative integer, got {s:?}")));
    }
    Ok(parse_int(s, path)?.to_biguint().expect("nonnegative"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| HarnessError::schema(path, "expected a decimal string"))
}

fn bit_set(v: &Value, path: &str) -> Result<Vec<u64>> {
    let bits = array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, b)| index_u64(b, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    if bits.windows(2).any(|w| w[0] >= w[1]) {
        return Err(HarnessError::schema(path, "bit positions must be strictly increasing"));
    }
    Ok(bits)
}

fn parse_coeff(v: &Value, path: &str) -> Result<CoeffForm> {
    match v {
        Value::String(s) => Ok(CoeffForm::Int(parse_int(s, path)?)),
        Value::Object(obj) => {
            only_keys(obj, &["plus", "minus"], path)?;
            let plus = bit_set(field(obj, "plus", path)?, &join(path, "plus"))?;
            let minus = bit_set(field(obj, "minus", path)?, &join(path, "minus"))?;
            if plus.iter().any(|b| minus.binary_search(b).is_ok()) {
                return Err(HarnessError::schema(path, "plus and minus share a bit position"));
            }
            Ok(CoeffForm::Digits(SparseCoeff::new(plus, minus)))
        }
        _ => Err(HarnessError::schema(path, "expected a decimal string or a {plus, minus} object")),
    }
}

fn parse_sps(obj: &Map<String, Value>) -> Result<SpsExpr> {
    only_keys(obj, &["kind", "factors", "products"], "$")?;
    let mut factors = Vec::new();
    for (fi, f) in array(field(obj, "factors", "$")?, "factors")?.iter().enumerate() {
        let fpath = format!("factors[{fi}]");
        let fobj = object(f, &fpath)?;
        only_keys(fobj, &["monomials"], &fpath)?;
        let mpath = join(&fpath, "monomials");
        let mut monomials: Vec<(BigUint, CoeffForm)> = Vec::new();
        for (mi, m) in array(field(fobj, "monomials", &fpath)?, &mpath)?.iter().enumerate() {
            let path = format!("{mpath}[{mi}]");
            let mobj = object(m, &path)?;
            only_keys(mobj, &["coeff", "exp"], &path)?;
            let cpath = join(&path, "coeff");
            let coeff = parse_coeff(field(mobj, "coeff", &path)?, &cpath)?;
            let is_zero = match &coeff {
                CoeffForm::Int(c) => c.sign() == num_bigint::Sign::NoSign,
                CoeffForm::Digits(d) => d.digit_count() == 0 || d.value().sign() == num_bigint::Sign::NoSign,
            };
            if is_zero {
                return Err(HarnessError::schema(&cpath, "zero coefficient"));
            }
            let epath = join(&path, "exp");
            let exp = parse_nat(string(field(mobj, "exp", &path)?, &epath)?, &epath)?;
            if monomials.last().is_some_and(|(prev, _)| *prev >= exp) {
                return Err(HarnessError::schema(&epath, "exponents must be strictly increasing"));
            }
            monomials.push((exp, coeff));
        }
        factors.push(Factor::with_forms(monomials).map_err(|e| HarnessError::schema(&fpath, e.to_string()))?);
    }
    let mut products = Vec::new();
    for (pi, p) in array(field(obj, "products", "$")?, "products")?.iter().enumerate() {
        let path = format!("products[{pi}]");
        let refs = array(p, &path)?
            .iter()
            .enumerate()
            .map(|(j, r)| usize_field(r, &format!("{path}[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        products.push(refs);
    }
    SpsExpr::new(factors, products).map_err(|e| HarnessError::schema("products", e.to_string()))
}

fn parse_atom(v: &Value, path: &str) -> Result<Atom> {
    let obj = object(v, path)?;
    if obj.len() != 1 {
        return Err(HarnessError::schema(path, "an atom has exactly one of x, z, const"));
    }
    let (k, val) = obj.iter().next().expect("one entry");
    let p = join(path, k);
    match k.as_str() {
        "x" => Ok(Atom::X(usize_field(val, &p)?)),
        "z" => Ok(Atom::Z(usize_field(val, &p)?)),
        "const" => Ok(Atom::Const(parse_int(string(val, &p)?, &p)?)),
        _ => Err(HarnessError::schema(&p, "unknown atom kind")),
    }
}

fn parse_depth4(obj: &Map<String, Value>) -> Result<Depth4Formula> {
    only_keys(obj, &["kind", "x_arity", "z_arity", "terms"], "$")?;
    let x_arity = usize_field(field(obj, "x_arity", "$")?, "x_arity")?;
    let z_arity = usize_field(field(obj, "z_arity", "$")?, "z_arity")?;
    let mut terms: Vec<Term> = Vec::new();
    for (ti, t) in array(field(obj, "terms", "$")?, "terms")?.iter().enumerate() {
        let tpath = format!("terms[{ti}]");
        let mut term: Term = Vec::new();
        for (bi, b) in array(t, &tpath)?.iter().enumerate() {
            let bpath = format!("{tpath}[{bi}]");
            let mut block: Block = Vec::new();
            for (li, l) in array(b, &bpath)?.iter().enumerate() {
                let lpath = format!("{bpath}[{li}]");
                let leaf: Leaf = array(l, &lpath)?
                    .iter()
                    .enumerate()
                    .map(|(ai, a)| parse_atom(a, &format!("{lpath}[{ai}]")))
                    .collect::<Result<_>>()?;
                block.push(leaf);
            }
            term.push(block);
        }
        terms.push(term);
    }
    Depth4Formula::new(x_arity, z_arity, terms).map_err(|e| HarnessError::schema("terms", e.to_string()))
}
