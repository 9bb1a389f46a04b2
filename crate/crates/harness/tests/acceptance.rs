//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sps_core::depth4::{Block, Leaf, Term};
use sps_core::pit::{fold_remainder, pit_exact, pit_hitting_set, pit_random_mod, sufficiency_check, RandomPitConfig};
use sps_core::roots::{chebyshev, count_integer_roots, count_real_roots};
use sps_core::sps::EvalMode;
use sps_core::{Atom, Caps, Depth4Formula, GeneratorSpec, HittingSetDescr, Prime, SparsePoly, SpsExpr, Verdict};
use sps_harness::demo::linear_product;
use sps_harness::generate::{generate_instance, Grid};
use sps_harness::hunt::{run_hunt, write_reports, HuntConfig, RecordVerdict};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    check(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(took)
}

fn grid(k: usize, m: usize, t: usize, coeff_bound: u64, exp_bound: u64) -> Grid {
    Grid { k: 1..=k, m: 1..=m, t: 1..=t, coeff_bound, exp_bound }
}

fn hunt(grid: Grid, samples: u64, seed: u64) -> HuntConfig {
    HuntConfig { grid, samples, seed, caps: Caps::default(), timing: false }
}

fn expansions(n: usize, grid: &Grid, seed: u64) -> Vec<SpsExpr> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| generate_instance(grid, &mut rng, &Caps::default()).unwrap().expr).collect()
}

fn pochhammer() -> Outcome {
    let start = Instant::now();
    let caps = Caps::default();
    let p = GeneratorSpec::linear().prefix_product(8, &caps).map_err(|e| e.to_string())?;
    let ints = count_integer_roots(&p, &caps).map_err(|e| e.to_string())?;
    let real = count_real_roots(&p, &caps).map_err(|e| e.to_string())?;
    check(ints == 8 && real == 8, || format!("integer {ints}, real {real}"))?;
    let took = within(Duration::from_secs(1), start)?;
    Ok(format!("g_3 has 8 integer and 8 real roots ({took:.0?})"))
}

fn descartes_suite() -> Outcome {
    let start = Instant::now();
    let report = run_hunt(&hunt(grid(1, 4, 5, 100, 30), 1000, 2024)).map_err(|e| e.to_string())?;
    let mut worst = 0usize;
    for r in &report.records {
        let c = r.counts.as_ref().ok_or_else(|| format!("instance {} skipped", r.instance_id))?;
        let (m, t) = (r.params.m, r.params.t);
        check(r.params.k == 1, || "k ≠ 1".into())?;
        check(c.real <= 2 * m * (t - 1) + 1, || format!("instance {} has {} > 2m(t−1)+1", r.instance_id, c.real))?;
        check(r.verdict != RecordVerdict::Violation, || format!("instance {} flagged", r.instance_id))?;
        worst = worst.max(c.real);
    }
    check(report.records.len() == 1000 && report.summary.violations == 0, || "violations recorded".into())?;
    let took = within(Duration::from_secs(60), start)?;
    Ok(format!("1000 instances, 0 violations, max {worst} real roots ({took:.1?})"))
}

fn expansion_suite() -> Outcome {
    let report = run_hunt(&hunt(grid(3, 3, 3, 100, 30), 500, 77)).map_err(|e| e.to_string())?;
    for r in &report.records {
        let c = r.counts.as_ref().ok_or_else(|| format!("instance {} skipped", r.instance_id))?;
        let (k, m, t) = (r.params.k as u64, r.params.m as u32, r.params.t as u64);
        let bound = 2 * k * t.pow(m) - 1;
        check((c.real as u64) <= bound, || format!("instance {} has {} > 2kt^m−1 = {bound}", r.instance_id, c.real))?;
    }
    check(report.summary.violations == 0, || "violations recorded".into())?;
    Ok(format!("{} instances, 0 violations", report.records.len()))
}

fn oracle_equivalence() -> Outcome {
    let caps = Caps::default();
    let g = grid(3, 3, 4, 50, 25);
    let exprs = expansions(200, &g, 5);
    for (i, e) in exprs.iter().enumerate() {
        let x = e.expand(&caps).map_err(|e| e.to_string())?;
        for a in -10i64..10 {
            let a = BigInt::from(a);
            let lhs = x.eval_integer(&a, caps.max_eval_bits).unwrap();
            let rhs = e.eval_integer(&a, &caps).unwrap();
            check(lhs == rhs, || format!("instance {i} differs at {a}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let primes = [101u64, 65_537, 1_000_000_007, (1 << 61) - 1];
    for i in 0..500 {
        let e = &exprs[i % exprs.len()];
        let q = Prime::new(primes[rng.gen_range(0..primes.len())]).unwrap();
        let a = BigInt::from(rng.gen_range(-1000i64..=1000));
        let exact = e.eval_integer(&a, &caps).unwrap().mod_floor(&BigInt::from(q.get()));
        let modular = e.eval(&a, EvalMode::Modular(q), &caps).unwrap();
        check(modular == sps_core::sps::Value::Residue(exact.to_u64().unwrap()), || format!("triple {i} disagrees"))?;
    }
    Ok("200 × 20 expansion evaluations and 500 modular triples agree".into())
}

fn fooling_product() -> Outcome {
    let caps = Caps::default();
    for m in [2u64, 4, 8] {
        let e = linear_product(m);
        let h = GeneratorSpec::linear().hitting_points(m).unwrap();
        let hit = pit_hitting_set(&e, &h, &caps).unwrap();
        let exact = pit_exact(&e, &caps).unwrap();
        check(hit.verdict == Verdict::Zero, || format!("m={m}: hitting set not fooled"))?;
        check(exact.verdict == Verdict::Nonzero, || format!("m={m}: exact says zero"))?;
        check(exact.witness.unwrap().verify(&e, &caps).unwrap(), || format!("m={m}: witness"))?;
    }
    Ok("m ∈ {2, 4, 8}: hitting zero, exact nonzero".into())
}

fn sufficiency() -> Outcome {
    let caps = Caps::default();
    let exprs = expansions(100, &grid(3, 3, 3, 30, 12), 8);
    let mut largest = BigUint::zero();
    for (i, e) in exprs.iter().enumerate() {
        let d = e.measure().degree_bound();
        let n = d.to_i64().unwrap() + 1;
        let points: Vec<BigInt> = (0..n).map(|j| BigInt::from(j - n / 2)).collect();
        let ok = sufficiency_check(e, &points, &caps).map_err(|e| format!("instance {i}: {e}"))?;
        check(ok, || format!("instance {i} returned false"))?;
        largest = largest.max(d);
    }
    Ok(format!("100 instances, point sets up to {} points", largest + 1u32))
}

fn one_sidedness() -> Outcome {
    let cfg = RandomPitConfig::default();
    let caps = Caps::default();
    let g = grid(2, 3, 4, 100, 40);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..50 {
        let e = generate_instance(&g, &mut rng, &caps).unwrap().expr;
        // Σ Π f − Σ Π f with the first factor of each copy negated
        let mut products: Vec<Vec<SparsePoly>> = Vec::new();
        for p in e.products() {
            let fs: Vec<SparsePoly> = p.iter().map(|&f| e.factors()[f].poly().clone()).collect();
            let mut neg = fs.clone();
            neg[0] = -&neg[0];
            products.push(fs);
            products.push(neg);
        }
        let zero = SpsExpr::from_products(products).unwrap();
        for seed in 0..20 {
            let v = pit_random_mod(&zero, 3, seed, &cfg).unwrap();
            check(v.verdict == Verdict::Zero, || format!("encoding {i} seed {seed}: nonzero"))?;
        }
    }
    let mut failures = 0;
    let mut bound = 0f64;
    for (i, e) in expansions(100, &g, 10).iter().enumerate() {
        let v = pit_random_mod(e, 5, i as u64, &cfg).unwrap();
        bound += e.measure().degree_bound().to_f64().unwrap() / cfg.lo as f64;
        if v.is_zero() {
            failures += 1;
        } else {
            check(v.witness.unwrap().verify(e, &caps).unwrap(), || format!("instance {i}: witness"))?;
        }
    }
    check(failures == 0, || format!("{failures} false zeros, expected ≤ {bound:.3e}"))?;
    Ok(format!("1000 zero runs zero; 100 nonzero, 0 failures (Σ D/q ≤ {bound:.1e})"))
}

fn random_formula(rng: &mut ChaCha8Rng) -> Depth4Formula {
    let nx = rng.gen_range(1..=4);
    let nz = rng.gen_range(1..=4);
    let atom = |rng: &mut ChaCha8Rng| match rng.gen_range(0..3) {
        0 => Atom::X(rng.gen_range(1..=nx)),
        1 => Atom::Z(rng.gen_range(1..=nz)),
        _ => Atom::Const(BigInt::from(rng.gen_range(-4i64..=4))),
    };
    let terms: Vec<Term> = (0..rng.gen_range(1..=3))
        .map(|_| {
            (0..rng.gen_range(1..=3))
                .map(|_| -> Block {
                    (0..rng.gen_range(1..=3))
                        .map(|_| -> Leaf { (0..rng.gen_range(1..=3)).map(|_| atom(rng)).collect() })
                        .collect()
                })
                .collect()
        })
        .collect();
    Depth4Formula::new(nx, nz, terms).unwrap()
}

fn substitution_identity() -> Outcome {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..100 {
        let f = random_formula(&mut rng);
        let e = f.substitute_powers(&caps).unwrap();
        for a in -5i64..5 {
            let a = BigInt::from(a);
            let (xs, zs) = f.coupled_point(&a, &caps).unwrap();
            let direct = f.to_circuit().eval(&[xs, zs].concat()).unwrap();
            let substituted = e.eval_integer(&a, &caps).unwrap();
            check(direct == substituted, || format!("formula {i} differs at {a}"))?;
        }
    }
    Ok("100 formulas × 10 points agree exactly".into())
}

fn chebyshev_contrast() -> Outcome {
    let start = Instant::now();
    let caps = Caps::default();
    for j in 1..=6u32 {
        let t = chebyshev(1 << j, &caps).unwrap();
        let real = count_real_roots(&t, &caps).unwrap();
        check(real == 1 << j, || format!("T_{} has {real} real roots", 1 << j))?;
    }
    let took = within(Duration::from_secs(30), start)?;
    Ok(format!("T_2 … T_64 have all roots real ({took:.0?})"))
}

/// Remainder modulo `x^order − 1` by long division on dense coefficients.
fn remainder(p: &SparsePoly, order: usize) -> SparsePoly {
    let mut c = p.to_dense(1 << 20).unwrap();
    for d in (order..c.len()).rev() {
        let lead = std::mem::take(&mut c[d]);
        c[d - order] += lead;
    }
    SparsePoly::from_coeffs(&c)
}

fn unity_folding() -> Outcome {
    let caps = Caps::default();
    let g = grid(2, 3, 3, 20, 20);
    let mut exprs = expansions(50, &g, 13);
    // make some instances divisible by x^6 − 1 or x^12 − 1
    let cyclic = [6u64, 12];
    for (i, e) in exprs.iter_mut().enumerate().filter(|(i, _)| i % 3 == 0) {
        let n = cyclic[i % 2];
        let mut products: Vec<Vec<SparsePoly>> = Vec::new();
        for p in e.products() {
            let mut fs: Vec<SparsePoly> = p.iter().map(|&f| e.factors()[f].poly().clone()).collect();
            fs.push(SparsePoly::from_terms([(0u64, -1i64), (n, 1)]));
            products.push(fs);
        }
        *e = SpsExpr::from_products(products).unwrap();
    }
    let (mut zeros, mut nonzeros) = (0, 0);
    for (idx, e) in exprs.iter().enumerate() {
        let x = e.expand(&caps).unwrap();
        let mut divisible = Vec::new();
        for order in 1..=12usize {
            let folded = fold_remainder(e, order as u64, &caps).unwrap();
            let expected = remainder(&x, order);
            check(folded == expected, || format!("instance {idx} order {order}"))?;
            divisible.push(expected.is_zero());
        }
        for m in 1..=12usize {
            let h = HittingSetDescr::unity_roots((1..=m as u64).collect()).unwrap();
            let v = pit_hitting_set(e, &h, &caps).unwrap();
            let truth = divisible[..m].iter().all(|&d| d);
            check(v.is_zero() == truth, || format!("instance {idx} m {m}: verdict disagrees"))?;
            if truth {
                zeros += 1;
            } else {
                nonzeros += 1;
            }
        }
    }
    Ok(format!("50 instances × 12 orders; {zeros} zero and {nonzeros} nonzero set verdicts match"))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = hunt(grid(3, 3, 4, 100, 30), 200, 4242);
    let mut outputs = Vec::new();
    for (run, threads) in [(0, 1), (1, 4)] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let report = pool.install(|| run_hunt(&cfg)).map_err(|e| e.to_string())?;
        let path = dir.path().join(format!("run{run}.csv"));
        write_reports(&report, &path).map_err(|e| e.to_string())?;
        outputs.push(std::fs::read(&path).unwrap());
    }
    check(outputs[0] == outputs[1], || "CSV bytes differ".into())?;
    Ok(format!("two runs on 1 and 4 threads, {} identical CSV bytes", outputs[0].len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("pochhammer-wilkinson demo", pochhammer),
        ("single-product bound suite", descartes_suite),
        ("expansion bound suite", expansion_suite),
        ("oracle equivalence", oracle_equivalence),
        ("hitting-set fooling product", fooling_product),
        ("degree sufficiency", sufficiency),
        ("randomized one-sidedness", one_sidedness),
        ("power substitution identity", substitution_identity),
        ("chebyshev contrast", chebyshev_contrast),
        ("unity-roots folding", unity_folding),
        ("hunt determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
