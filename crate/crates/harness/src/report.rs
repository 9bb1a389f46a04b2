//! JSON views of verdicts and root counts for command output.

use serde_json::{json, Value};
use sps_core::{BoundCert, PitVerdict, SpsParams, Verdict, Witness};

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Zero => "zero",
        Verdict::Nonzero => "nonzero",
    }
}

pub fn params_json(p: &SpsParams) -> Value {
    json!({
        "s": p.s,
        "k": p.k,
        "m": p.m,
        "t": p.t,
        "deg_max": p.deg_max.to_string(),
        "coeff_max_bits": p.coeff_max_bits,
        "digit_max": p.digit_max,
    })
}

pub fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Integer { point, value } => json!({
            "kind": "integer",
            "point": point.to_string(),
            "value": value.to_string(),
        }),
        Witness::Residue { point, prime, value } => json!({
            "kind": "residue",
            "point": point.to_string(),
            "prime": prime.get().to_string(),
            "value": value.to_string(),
        }),
        Witness::UnityFold { order, remainder } => json!({
            "kind": "unity_fold",
            "order": order,
            "remainder": remainder.to_string(),
        }),
    }
}

pub fn pit_json(v: &PitVerdict) -> Value {
    json!({
        "verdict": verdict_name(v.verdict),
        "method": v.method.name(),
        "witness": v.witness.as_ref().map(witness_json),
        "seed": v.seed,
        "primes": v.primes.iter().map(|q| q.get().to_string()).collect::<Vec<_>>(),
        "trials": v.trials.iter().map(|t| json!({
            "prime": t.prime.get().to_string(),
            "point": t.point.to_string(),
            "value": t.value.to_string(),
        })).collect::<Vec<_>>(),
        "error_bound": v.error_bound,
    })
}

pub fn certs_json(certs: &[BoundCert]) -> Value {
    Value::Array(
        certs
            .iter()
            .map(|c| json!({ "kind": c.kind.name(), "value": c.value.to_string() }))
            .collect(),
    )
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}
