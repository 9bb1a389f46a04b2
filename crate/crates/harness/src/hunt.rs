//! Sweeps over random instances looking for many real roots.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sps_core::roots::{applicable_bounds, count_real_and_integer_roots};
use sps_core::{BoundKind, Caps, CapKind, Error as CoreError, SpsParams};

use crate::error::{HarnessError, Result};
use crate::generate::{generate_instance, Grid};

#[derive(Debug, Clone)]
pub struct HuntConfig {
    pub grid: Grid,
    pub samples: u64,
    pub seed: u64,
    pub caps: Caps,
    /// Fill the `millis` column. Off by default so reports are reproducible.
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordVerdict {
    Ok,
    /// Reaches `k·(2m(t−1)+1)` real roots.
    Record,
    Skip,
    Violation,
}

impl RecordVerdict {
    pub fn name(self) -> &'static str {
        match self {
            RecordVerdict::Ok => "ok",
            RecordVerdict::Record => "record",
            RecordVerdict::Skip => "skip",
            RecordVerdict::Violation => "violation",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Counts {
    pub real: usize,
    pub integer: usize,
}

#[derive(Debug, Clone)]
pub struct RootReport {
    pub instance_id: u64,
    pub params: SpsParams,
    /// `None` when a resource cap stopped the exact count.
    pub counts: Option<Counts>,
    pub skipped: Option<CapKind>,
    pub bound_descartes: Option<BigUint>,
    pub bound_expansion: BigUint,
    pub verdict: RecordVerdict,
    pub witness_ok: bool,
    pub seed: u64,
    pub millis: Option<u128>,
}

impl RootReport {
    /// `real / (k·m·t)`.
    pub fn ratio(&self) -> Option<f64> {
        let kmt = (self.params.k * self.params.m * self.params.t) as f64;
        self.counts.as_ref().map(|c| c.real as f64 / kmt)
    }

    fn kmt(&self) -> usize {
        self.params.k * self.params.m * self.params.t
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Sampling {
    pub scheme: &'static str,
    pub k: [usize; 2],
    pub m: [usize; 2],
    pub t: [usize; 2],
    pub coeff_bound: u64,
    pub exp_bound: u64,
    pub seed: u64,
    pub rng: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub instances: u64,
    pub counted: u64,
    pub cap_skips: u64,
    pub violations: u64,
    pub records: u64,
    pub max_ratio: Option<String>,
    pub argmax_instance: Option<u64>,
    pub sampling: Sampling,
}

#[derive(Debug, Clone)]
pub struct HuntReport {
    pub records: Vec<RootReport>,
    pub summary: Summary,
}

pub fn instance_rng(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

fn process(id: u64, cfg: &HuntConfig) -> Result<RootReport> {
    let start = Instant::now();
    let mut rng = instance_rng(cfg.seed, id);
    let sample = generate_instance(&cfg.grid, &mut rng, &cfg.caps)?;
    let expr = &sample.expr;
    let witness_ok = match &sample.pit.witness {
        Some(w) => w.verify(expr, &cfg.caps)?,
        None => false,
    };
    let params = expr.measure();
    let (k, m, t) = (params.k as u64, params.m as u64, params.t as u64);
    let certs = applicable_bounds(k, m, t)?;
    let cert = |kind| certs.iter().find(|c| c.kind == kind).map(|c| c.value.clone());
    let bound_expansion = cert(BoundKind::ExpansionSum).expect("expansion bound always applies");
    let bound_descartes = cert(BoundKind::DescartesProduct);

    let counted = expr.expand(&cfg.caps).and_then(|p| {
        let (real, integer) = count_real_and_integer_roots(&p, &cfg.caps)?;
        Ok(Counts { real, integer })
    });
    let (counts, skipped) = match counted {
        Ok(c) => (Some(c), None),
        Err(CoreError::CapExceeded { kind, .. }) => (None, Some(kind)),
        Err(e) => return Err(e.into()),
    };

    let verdict = match &counts {
        None => RecordVerdict::Skip,
        Some(c) => {
            let real = BigUint::from(c.real);
            let over_cert = certs.iter().any(|b| real > b.value);
            // for k = 1 the single-product bound caps the ratio at 2 + 1/(mt) ≤ 3
            let over_ratio = k == 1 && c.real > 3 * (k * m * t) as usize;
            let envelope = k * (2 * m * (t - 1) + 1);
            if over_cert || over_ratio || !witness_ok || c.integer > c.real {
                RecordVerdict::Violation
            } else if c.real as u64 >= envelope {
                RecordVerdict::Record
            } else {
                RecordVerdict::Ok
            }
        }
    };
    Ok(RootReport {
        instance_id: id,
        params,
        counts,
        skipped,
        bound_descartes,
        bound_expansion,
        verdict,
        witness_ok,
        seed: cfg.seed,
        millis: cfg.timing.then(|| start.elapsed().as_millis()),
    })
}

/// Processes instances `0..samples` in parallel; the result is ordered by
/// instance id and independent of scheduling.
pub fn run_hunt(cfg: &HuntConfig) -> Result<HuntReport> {
    cfg.grid.validate()?;
    let records = (0..cfg.samples)
        .into_par_iter()
        .map(|id| process(id, cfg))
        .collect::<Result<Vec<_>>>()?;

    let mut best: Option<&RootReport> = None;
    for r in records.iter().filter(|r| r.counts.is_some()) {
        let better = match best {
            None => true,
            // real/kmt > best_real/best_kmt, cross-multiplied; ties keep the lower id
            Some(b) => r.counts.as_ref().unwrap().real * b.kmt() > b.counts.as_ref().unwrap().real * r.kmt(),
        };
        if better {
            best = Some(r);
        }
    }
    let count = |v: RecordVerdict| records.iter().filter(|r| r.verdict == v).count() as u64;
    let g = &cfg.grid;
    let summary = Summary {
        instances: cfg.samples,
        counted: records.iter().filter(|r| r.counts.is_some()).count() as u64,
        cap_skips: count(RecordVerdict::Skip),
        violations: count(RecordVerdict::Violation),
        records: count(RecordVerdict::Record),
        max_ratio: best.and_then(|b| b.ratio()).map(|r| format!("{r:.6}")),
        argmax_instance: best.map(|b| b.instance_id),
        sampling: Sampling {
            scheme: "uniform grid: (k, m, t) uniform over the ranges; each factor has t distinct exponents uniform in [0, exp_bound] and coefficients uniform in [-coeff_bound, coeff_bound] without 0; identically zero draws rejected",
            k: [*g.k.start(), *g.k.end()],
            m: [*g.m.start(), *g.m.end()],
            t: [*g.t.start(), *g.t.end()],
            coeff_bound: g.coeff_bound,
            exp_bound: g.exp_bound,
            seed: cfg.seed,
            rng: "ChaCha8 seeded from seed, stream = instance id",
        },
    };
    Ok(HuntReport { records, summary })
}

pub const CSV_HEADER: [&str; 14] = [
    "instance_id",
    "s",
    "k",
    "m",
    "t",
    "deg_max",
    "real_roots",
    "int_roots",
    "bound_descartes",
    "bound_expansion",
    "ratio",
    "verdict",
    "seed",
    "millis",
];

fn skip_marker(kind: Option<CapKind>) -> String {
    match kind {
        Some(CapKind::Monomials) => "cap:monomials".into(),
        Some(CapKind::Bits) => "cap:bits".into(),
        Some(CapKind::SturmDegree) => "cap:sturm".into(),
        None => "cap".into(),
    }
}

pub fn write_csv<W: Write>(records: &[RootReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        let (real, int) = match &r.counts {
            Some(c) => (c.real.to_string(), c.integer.to_string()),
            None => (skip_marker(r.skipped), skip_marker(r.skipped)),
        };
        w.write_record([
            r.instance_id.to_string(),
            r.params.s.to_string(),
            r.params.k.to_string(),
            r.params.m.to_string(),
            r.params.t.to_string(),
            r.params.deg_max.to_string(),
            real,
            int,
            r.bound_descartes.as_ref().map(|b| b.to_string()).unwrap_or_default(),
            r.bound_expansion.to_string(),
            r.ratio().map(|x| format!("{x:.6}")).unwrap_or_default(),
            r.verdict.name().to_string(),
            r.seed.to_string(),
            r.millis.map(|m| m.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush().map_err(|e| HarnessError::io("csv output", e))?;
    Ok(())
}

pub fn csv_string(records: &[RootReport]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(records, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

pub fn summary_json(summary: &Summary) -> String {
    let mut s = serde_json::to_string_pretty(summary).expect("summary serializes");
    s.push('\n');
    s
}

/// Writes the CSV to `csv_path` and the summary next to it; returns the summary path.
pub fn write_reports(report: &HuntReport, csv_path: &Path) -> Result<PathBuf> {
    let file = std::fs::File::create(csv_path).map_err(|e| HarnessError::io(csv_path, e))?;
    write_csv(&report.records, std::io::BufWriter::new(file))?;
    let json_path = csv_path.with_extension("json");
    std::fs::write(&json_path, summary_json(&report.summary)).map_err(|e| HarnessError::io(&json_path, e))?;
    Ok(json_path)
}
