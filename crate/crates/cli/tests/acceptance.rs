//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero when any
//! criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use transversals::analysis::{bounds_table, verify_weights, Family, Weights};
use transversals::compression::{phase_one, project, CompressionConfig, DEFAULT_ALPHA};
use transversals::format::write_hypergraph;
use transversals::instances::{brute_force_enumerate, gen_lower_bound, gen_random, GeneratorKind, GeneratorSpec};
use transversals::rank3::MeasureAudit;
use transversals::{collect_sorted, Compression, Enumerator, Hypergraph, Rank3, RankK};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn random(k: usize, n: u32, m: usize, seed: u64) -> Hypergraph {
    let mut m = m;
    loop {
        match gen_random(&GeneratorSpec { kind: GeneratorKind::Random, k, n, m, seed }) {
            Ok(h) => return h,
            Err(_) => m -= 1,
        }
    }
}

fn oracle_equivalence() -> Outcome {
    let mut by_rank = [0usize; 7];
    let mut checks = 0usize;
    for i in 0..600u64 {
        let k = 2 + (i % 5) as usize;
        let n = 4 + (i * 7 % 9) as u32;
        let m = 1 + (i * 11 % 24) as usize;
        let h = random(k, n, m, i);
        let expected = brute_force_enumerate(&h).map_err(|e| e.to_string())?;
        let rank = h.rank();
        by_rank[rank] += 1;
        let mut engines: Vec<Box<dyn Enumerator>> = vec![Box::new(RankK::default())];
        if rank <= 3 {
            engines.push(Box::new(Rank3::default()));
        }
        if rank == 4 {
            engines.push(Box::new(Compression::default()));
        }
        for engine in engines {
            let got = collect_sorted(engine.as_ref(), &h).map_err(|e| e.to_string())?;
            if got != expected {
                return Err(format!("{} differs from the oracle on instance {i}", engine.name()));
            }
            checks += 1;
        }
    }
    if let Some(r) = (2..=6).find(|&r| by_rank[r] == 0) {
        return Err(format!("no instance of rank {r}"));
    }
    Ok(format!("600 instances, {checks} engine runs, ranks 2..6 counts {:?}", &by_rank[2..]))
}

fn lower_bound_counts() -> Outcome {
    for (k, n, expected) in [(2usize, 3u32, 3u64), (2, 9, 27), (3, 5, 10), (3, 12, 100), (4, 7, 35), (4, 14, 1225)] {
        let mut text = Vec::new();
        write_hypergraph(&gen_lower_bound(k, n).unwrap(), &mut text).unwrap();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = transversals_cli::run(["transversals", "count"], &mut text.as_slice(), &mut out, &mut err);
        let got = String::from_utf8_lossy(&out).trim().to_string();
        if code != 0 || got != expected.to_string() {
            return Err(format!("k={k} n={n}: got `{got}` (exit {code}), expected {expected}"));
        }
    }
    Ok("3, 27, 10, 100, 35, 1225".into())
}

fn measure_verification() -> Outcome {
    let w = Weights::rank3();
    let report = verify_weights(&w, 1e-6);
    let mut problems = Vec::new();
    for s in report.summaries() {
        if !s.pass() {
            problems.push(format!("family {} has {} failures", s.family, s.failures));
        }
    }
    let mut expect_tight = |family: Family, params: &[usize]| match report.find(family, params) {
        Some(r) if r.pass && r.slack <= 1e-6 => {}
        Some(r) => problems.push(format!("{family} {params:?} slack {:.3e}", r.slack)),
        None => problems.push(format!("{family} {params:?} missing")),
    };
    for p in [[5, 5], [6, 5], [6, 6]] {
        expect_tight(Family::C21, &p);
    }
    expect_tight(Family::C31, &[2, 1]);
    for m in 2..=4 {
        expect_tight(Family::C32, &[2, 6, 6, m]);
    }
    for d in 3..=6 {
        expect_tight(Family::C41, &[d]);
    }
    let base = w.growth_base();
    if !(1.67547..=1.67550).contains(&base) {
        problems.push(format!("2^omega_5 = {base:.7} outside [1.67547, 1.67550]"));
    }
    if problems.is_empty() {
        Ok(format!("11 families pass, tight tuples found, 2^omega_5 = {base:.7}"))
    } else {
        Err(problems.join("; "))
    }
}

fn table_reproduction() -> Outcome {
    let rows = bounds_table(20).map_err(|e| e.to_string())?;
    let row = |k: usize| &rows[k - 2];
    let lower = [
        (2, 1.4422),
        (3, 1.5848),
        (4, 1.6618),
        (5, 1.7114),
        (6, 1.7467),
        (7, 1.7734),
        (8, 1.7943),
        (9, 1.8112),
        (10, 1.8253),
        (20, 1.8962),
    ];
    let upper = [
        (5, 1.9538, 5e-5),
        (6, 1.9779, 5e-5),
        (7, 1.9893, 5e-5),
        (8, 1.9947, 5e-5),
        (9, 1.9974, 5e-5),
        (10, 1.9987, 5e-5),
        (20, 1.9999988, 5e-8),
    ];
    for (k, v) in lower {
        if (row(k).lower - v).abs() > 5e-5 {
            return Err(format!("lower k={k}: {} vs {v}", row(k).lower));
        }
    }
    for (k, v, tol) in upper {
        if (row(k).upper - v).abs() > tol {
            return Err(format!("upper k={k}: {} vs {v}", row(k).upper));
        }
    }
    Ok("17 entries within tolerance".into())
}

fn growth_sanity() -> Outcome {
    let w = Weights::rank3();
    let mut audited = 0u64;
    let mut summary = Vec::new();
    for n in [5u32, 10, 15, 20, 25] {
        let h = gen_lower_bound(3, n).unwrap();
        let (stats, audit) =
            Rank3::default().enumerate_audited(&h, &w, &mut |_: &[u32]| {}).map_err(|e| e.to_string())?;
        let bound = f64::from(n).powi(3) * 1.6755f64.powi(n as i32);
        if stats.leaves as f64 > bound {
            return Err(format!("n={n}: {} leaves exceed {bound:.0}", stats.leaves));
        }
        if !audit.holds() || audit.worst_excess > MeasureAudit::TOLERANCE {
            return Err(format!("n={n}: measure inequality fails: {audit:?}"));
        }
        audited += audit.checked;
        summary.push(format!("n={n}:{}", stats.leaves));
    }
    Ok(format!("leaves {}, {} branching nodes audited", summary.join(" "), audited))
}

fn compression_internals() -> Outcome {
    let mut instances = 0;
    let mut pairs = 0usize;
    let mut seed = 0u64;
    while instances < 100 {
        let n = 6 + (seed % 5) as u32;
        let h = random(4, n, 4 + (seed % 9) as usize, seed);
        seed += 1;
        if h.rank() != 4 {
            continue;
        }
        instances += 1;
        let all = brute_force_enumerate(&h).map_err(|e| e.to_string())?;
        let mut outputs = Vec::new();
        for alpha in [0.5, DEFAULT_ALPHA, 0.8] {
            let scan = phase_one(&h, alpha).map_err(|e| e.to_string())?;
            if let Some(x) = &scan.witness {
                for bits in 0u32..1 << x.len() {
                    let n_set: Vec<u32> =
                        x.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &v)| v).collect();
                    let projected = project(&h, x, &n_set).map_err(|e| e.to_string())?;
                    if projected.rank() > h.rank() - 1 {
                        return Err(format!("seed {}: projection keeps rank {}", seed - 1, projected.rank()));
                    }
                    let inner = brute_force_enumerate(&projected).map_err(|e| e.to_string())?;
                    for t in all.iter().filter(|t| {
                        let meet: Vec<u32> = t.iter().copied().filter(|v| x.contains(v)).collect();
                        meet == n_set
                    }) {
                        let rest: Vec<u32> = t.iter().copied().filter(|v| !n_set.contains(v)).collect();
                        if inner.binary_search(&rest).is_err() {
                            return Err(format!("seed {}: {rest:?} not minimal in the projection", seed - 1));
                        }
                    }
                    pairs += 1;
                }
            }
            let engine = Compression::new(CompressionConfig::new(alpha, Box::new(Rank3::default())).unwrap());
            outputs.push(collect_sorted(&engine, &h).map_err(|e| e.to_string())?);
        }
        if outputs.iter().any(|o| *o != all) {
            return Err(format!("seed {}: output depends on alpha or differs from the oracle", seed - 1));
        }
    }
    Ok(format!("100 instances, {pairs} (X, N) pairs"))
}

fn run_binary(bin: &str, args: &[String]) -> (i32, Vec<u8>) {
    let out = Command::new(bin).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_transversals");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut corpus = Vec::new();
    let mut add = |name: String, h: &Hypergraph, dir: &Path| {
        let path = dir.join(name);
        let mut file = std::fs::File::create(&path).unwrap();
        write_hypergraph(h, &mut file).unwrap();
        corpus.push(path.to_string_lossy().into_owned());
    };
    for (k, n) in [(2, 6), (2, 9), (3, 5), (3, 10), (4, 7), (5, 9)] {
        add(format!("lb_{k}_{n}.hg"), &gen_lower_bound(k, n).unwrap(), dir.path());
    }
    for i in 0..14u64 {
        let k = 2 + (i % 5) as usize;
        add(format!("random_{i}.hg"), &random(k, 8 + (i % 4) as u32, 6 + i as usize, 100 + i), dir.path());
    }
    let mut invocations: Vec<Vec<String>> = Vec::new();
    for file in &corpus {
        for cmd in ["enumerate", "count", "minimum", "count-minimum", "bench"] {
            invocations.push(vec![cmd.into(), file.clone()]);
        }
        invocations.push(vec![
            "enumerate".into(),
            "--canonical".into(),
            "--algorithm".into(),
            "rankk".into(),
            file.clone(),
        ]);
    }
    let s = |x: &[&str]| x.iter().map(|t| t.to_string()).collect::<Vec<_>>();
    invocations.push(s(&["generate", "--kind", "lb", "--k", "3", "--n", "10"]));
    invocations.push(s(&["generate", "--kind", "triangles", "--n", "9"]));
    invocations.push(s(&["generate", "--kind", "random", "--k", "4", "--n", "12", "--m", "20", "--seed", "7"]));
    invocations.push(s(&["verify-measure"]));
    invocations.push(s(&["bounds-table"]));
    for args in &invocations {
        let first = run_binary(bin, args);
        if first.0 != 0 {
            return Err(format!("`{}` exited with {}", args.join(" "), first.0));
        }
        for _ in 0..2 {
            if run_binary(bin, args) != first {
                return Err(format!("`{}` output differs between runs", args.join(" ")));
            }
        }
    }
    Ok(format!("{} instances, {} invocations x 3", corpus.len(), invocations.len()))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("oracle equivalence", oracle_equivalence),
        ("lower-bound counts", lower_bound_counts),
        ("measure verification", measure_verification),
        ("bounds table", table_reproduction),
        ("search-tree growth", growth_sanity),
        ("compression internals", compression_internals),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  [{}] {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL  [{}] {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
