use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::json;
use sps_core::pit::{pit_exact, pit_hitting_set, pit_random_mod, RandomPitConfig};
use sps_core::roots::{count_integer_roots, count_real_roots_sps};
use sps_core::{Caps, GeneratorSpec, HittingSetDescr};

use sps_harness::demo::{run_demo, Demo};
use sps_harness::generate::Grid;
use sps_harness::hunt::{run_hunt, summary_json, write_csv, write_reports, HuntConfig};
use sps_harness::io::read_instance;
use sps_harness::report::{certs_json, params_json, pit_json, pretty};
use sps_harness::{HarnessError, Result};

#[derive(Parser)]
#[command(name = "sps", version, about = "Identity testing and real-root counting for sums of products of sparse polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Largest number of monomials any expansion may produce.
    #[arg(long, global = true, default_value_t = Caps::default().max_monomials)]
    max_monomials: usize,
    /// Largest bit size of an exact evaluation.
    #[arg(long, global = true, default_value_t = Caps::default().max_eval_bits)]
    max_bits: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Hitting,
    Random,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum Generator {
    Linear,
    Unity,
    Mixed,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether an instance is identically zero.
    Pit {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        method: Method,
        #[arg(long, value_enum, default_value = "linear")]
        generator: Generator,
        /// Hitting-set size; defaults to one more than the degree bound.
        #[arg(long)]
        prefix: Option<u64>,
        #[arg(long, default_value_t = 10)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Count the real and integer roots of an instance.
    Roots {
        #[arg(long)]
        input: PathBuf,
        /// Largest degree handed to the Sturm sequence.
        #[arg(long, default_value_t = Caps::default().sturm_degree)]
        sturm_cap: usize,
    },
    /// Sweep random instances and report root counts against the proven bounds.
    Hunt {
        #[arg(long, default_value = "1", value_parser = parse_range)]
        k: RangeInclusive<usize>,
        #[arg(long, default_value = "1..4", value_parser = parse_range)]
        m: RangeInclusive<usize>,
        #[arg(long, default_value = "1..5", value_parser = parse_range)]
        t: RangeInclusive<usize>,
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long, default_value_t = 100)]
        coeff_bound: u64,
        #[arg(long, default_value_t = 30)]
        exp_bound: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = Caps::default().sturm_degree)]
        sturm_cap: usize,
        /// CSV destination; the JSON summary is written next to it. Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record per-instance wall time in the millis column.
        #[arg(long)]
        timing: bool,
    },
    /// Run a fixed demonstration.
    Demo {
        #[arg(long, value_parser = ["pochhammer", "chebyshev", "eq1"])]
        name: String,
        #[arg(long, default_value_t = 3)]
        n: u32,
    },
}

/// `a..b`, `a-b` or a single value, inclusive.
fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let parse = |p: &str| p.trim().parse::<usize>().map_err(|e| format!("{p:?}: {e}"));
    let (lo, hi) = match s.split_once("..").or_else(|| s.split_once('-')) {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

fn run(cli: Cli) -> Result<i32> {
    let mut caps = Caps {
        max_monomials: cli.max_monomials,
        max_eval_bits: cli.max_bits,
        ..Caps::default()
    };
    match cli.command {
        Command::Pit { input, method, generator, prefix, trials, seed } => {
            let expr = read_instance(&input)?.into_sps(&caps)?;
            let verdict = match method {
                Method::Exact => pit_exact(&expr, &caps)?,
                Method::Random => pit_random_mod(&expr, trials, seed, &RandomPitConfig::default())?,
                Method::Hitting => {
                    let size = match prefix {
                        Some(p) => p,
                        None => (expr.measure().degree_bound() + 1u32)
                            .to_u64()
                            .ok_or_else(|| HarnessError::Usage("degree bound too large; pass --prefix".into()))?,
                    };
                    let spec = match generator {
                        Generator::Linear => GeneratorSpec::linear(),
                        Generator::Unity => GeneratorSpec::cyclotomic_like(),
                        Generator::Mixed => GeneratorSpec::mixed(),
                    };
                    let h: HittingSetDescr = spec.hitting_points(size)?;
                    pit_hitting_set(&expr, &h, &caps)?
                }
            };
            if let Some(w) = &verdict.witness {
                if !w.verify(&expr, &caps)? {
                    return Err(HarnessError::Theorem("witness failed to re-verify".into()));
                }
            }
            print!("{}", pretty(&pit_json(&verdict)));
            Ok(0)
        }
        Command::Roots { input, sturm_cap } => {
            caps.sturm_degree = sturm_cap;
            let expr = read_instance(&input)?.into_sps(&caps)?;
            let count = count_real_roots_sps(&expr, &caps)?;
            let integer = count_integer_roots(&expr.expand(&caps)?, &caps)?;
            let out = json!({
                "params": params_json(&expr.measure()),
                "real_roots": count.real,
                "integer_roots": integer,
                "certs": certs_json(&count.certs),
                "ratio": format!("{:.6}", count.ratio),
                "envelope": count.envelope,
                "record": count.record,
            });
            print!("{}", pretty(&out));
            Ok(0)
        }
        Command::Hunt { k, m, t, samples, coeff_bound, exp_bound, seed, sturm_cap, out, timing } => {
            caps.sturm_degree = sturm_cap;
            let cfg = HuntConfig {
                grid: Grid { k, m, t, coeff_bound, exp_bound },
                samples,
                seed,
                caps,
                timing,
            };
            let report = run_hunt(&cfg)?;
            match out {
                Some(path) => {
                    write_reports(&report, &path)?;
                }
                None => {
                    write_csv(&report.records, std::io::stdout().lock())?;
                    eprint!("{}", summary_json(&report.summary));
                }
            }
            if report.summary.violations > 0 {
                return Err(HarnessError::Theorem(format!(
                    "{} records violate a proven bound or failed witness re-verification",
                    report.summary.violations
                )));
            }
            Ok(0)
        }
        Command::Demo { name, n } => {
            let v = run_demo(Demo::parse(&name)?, n, &caps)?;
            print!("{}", pretty(&v));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

