//! End-to-end acceptance criteria. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use emkit_core::calculus::{self, series, DerivedOps, SeriesConfig, MEET_DIAGONAL_BAND};
use emkit_core::check::stream_rng;
use emkit_core::decompose::{self, Class};
use emkit_core::laws::laws_suite;
use emkit_core::models::{corner_iso_check, parse_selector_monoid, BooleanModel};
use emkit_core::{check_effect_monoid, CheckMode, Cx, EffectAlgebra, EffectMonoid, FiniteMonoid, Interval};
use emkit_enumerate::{naive, run_census, MonoidFacts};
use rand::Rng;

const EPS: f64 = 1e-9;
const SAMPLES: usize = 10_000;
const SEED: u64 = 0;

type Outcome = Result<String, String>;

fn within(budget: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    if took < budget {
        Ok(())
    } else {
        Err(format!("took {took:.1?}, budget {budget:?}"))
    }
}

fn fixtures() -> Vec<(String, FiniteMonoid)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        if name.starts_with("corrupted") {
            continue;
        }
        let s = emkit_core::load_structure(&std::fs::read(&path).unwrap()).unwrap();
        if s.product.is_some() {
            out.push((name, FiniteMonoid::new(s).unwrap()));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn axiom_suites() -> Outcome {
    let start = Instant::now();
    let mut checked = Vec::new();
    for (name, m) in fixtures() {
        let r = check_effect_monoid(&m, CheckMode::Exhaustive).map_err(|e| e.to_string())?;
        if !r.passed {
            return Err(format!("{name}: {:?}", r.violations.first()));
        }
        checked.push(name);
    }
    let sampled = CheckMode::sampled(SAMPLES, SEED);
    let r = check_effect_monoid(&Interval::with_tolerance(EPS), sampled).map_err(|e| e.to_string())?;
    if !r.passed {
        return Err(format!("interval: {:?}", r.violations.first()));
    }
    for k in 1..=8 {
        let r = check_effect_monoid(&Cx::with_tolerance(k, EPS), sampled).map_err(|e| e.to_string())?;
        if !r.passed {
            return Err(format!("cx:{k}: {:?}", r.violations.first()));
        }
    }
    within(Duration::from_secs(10), start)?;
    Ok(format!("{} fixtures exhaustive, interval and cx:1..8 sampled", checked.len()))
}

fn law_suite() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    let mut note = |report: emkit_core::laws::LawReport| -> Result<(), String> {
        for law in &report.laws {
            if law.applicable && !law.passed {
                return Err(format!("{}: {} failed with {:?}", report.model, law.law, law.counterexample));
            }
            total += law.checks;
        }
        Ok(())
    };
    let boolean = BooleanModel::new(3).unwrap();
    note(laws_suite(&boolean, CheckMode::Exhaustive, SAMPLES))?;
    let sampled = CheckMode::sampled(SAMPLES, SEED);
    note(laws_suite(&Interval::with_tolerance(EPS), sampled, SAMPLES))?;
    note(laws_suite(&Cx::with_tolerance(4, EPS), sampled, SAMPLES))?;
    within(Duration::from_secs(30), start)?;
    Ok(format!("{total} checks, no violations"))
}

fn gap<M: EffectMonoid>(m: &M, a: &M::Elem, b: &M::Elem) -> f64 {
    m.distance(a, b)
}

fn cross_validate<M: DerivedOps>(
    m: &M,
    label: &str,
    diagonal: impl Fn(&M::Elem, &M::Elem) -> bool,
    worst: &mut f64,
    skipped: &mut usize,
) -> Result<(), String> {
    let cfg = SeriesConfig::default();
    let mut rng = stream_rng(SEED, 3);
    for _ in 0..SAMPLES {
        let a = m.sample(&mut rng);
        let b = m.sample(&mut rng);
        let below = m.sample_below(&b, &mut rng);
        let mut cases = vec![
            ("floor", gap(m, &series::floor(m, &a, &cfg).value, &m.floor(&a))),
            ("ceil", gap(m, &series::ceil(m, &a, &cfg).value, &m.ceil(&a))),
            (
                "divide",
                gap(m, &series::divide(m, &below, &b, &cfg).value, &m.quotient(&below, &b)),
            ),
        ];
        if diagonal(&a, &b) {
            *skipped += 1;
        } else {
            cases.push(("meet", gap(m, &series::meet(m, &a, &b, &cfg).value, &m.meet(&a, &b))));
        }
        for (op, d) in cases {
            *worst = worst.max(d);
            if d > 1e-8 {
                return Err(format!(
                    "{label} {op}: series and closed form differ by {d:e} at a={}, b={}",
                    m.format_element(&a),
                    m.format_element(&b)
                ));
            }
        }
    }
    Ok(())
}

fn series_closed_forms() -> Outcome {
    let start = Instant::now();
    let (mut worst, mut skipped) = (0.0f64, 0);
    let band = |x: f64, y: f64| (x - y).abs() < MEET_DIAGONAL_BAND;
    let interval = Interval::with_tolerance(EPS);
    cross_validate(&interval, "interval", |a, b| band(*a, *b), &mut worst, &mut skipped)?;
    let cx = Cx::with_tolerance(4, EPS);
    let any_coordinate = |a: &Vec<f64>, b: &Vec<f64>| a.iter().zip(b).any(|(x, y)| band(*x, *y));
    cross_validate(&cx, "cx:4", any_coordinate, &mut worst, &mut skipped)?;
    within(Duration::from_secs(60), start)?;
    Ok(format!("largest gap {worst:.1e}, {skipped} meet inputs in the diagonal band"))
}

fn division_identity() -> Outcome {
    let mut worst = 0.0f64;
    for (label, run) in [
        ("interval", division_on(&Interval::with_tolerance(EPS))),
        ("cx:4", division_on(&Cx::with_tolerance(4, EPS))),
    ] {
        let gap = run?;
        worst = worst.max(gap);
        if gap > 1e-8 {
            return Err(format!("{label}: (a/b)·b misses a by {gap:e}"));
        }
    }
    Ok(format!("largest gap {worst:.1e}"))
}

fn division_on<M: DerivedOps>(m: &M) -> Result<f64, String> {
    let mut rng = stream_rng(SEED, 4);
    let mut worst = 0.0f64;
    for _ in 0..SAMPLES {
        let b = m.sample(&mut rng);
        let a = m.sample_below(&b, &mut rng);
        let q = calculus::divide(m, &a, &b).map_err(|e| e.to_string())?;
        worst = worst.max(m.distance(&m.product(&q, &b), &a));
    }
    Ok(worst)
}

fn census_oracle() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_emkit"))
        .args(["enumerate", "--max-size", "8"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("enumerate exited with {}", out.status));
    }
    let counts: Vec<u64> = String::from_utf8_lossy(&out.stdout)
        .lines()
        .filter(|l| l.starts_with('{'))
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["monoids"].as_u64().unwrap())
        .collect();
    if counts != [1, 1, 0, 1, 0, 0, 0, 1] {
        return Err(format!("monoid counts {counts:?}"));
    }
    let census = run_census(8).map_err(|e| e.to_string())?;
    for size in &census.sizes {
        for (s, facts) in size.monoids.iter().zip(&size.facts) {
            if !facts.commutative || !facts.all_idempotent {
                return Err(format!("size {}: representative {s:?} has {facts:?}", s.size));
            }
        }
    }
    for n in 1..=naive::NAIVE_MAX {
        let (fast, slow) = (&census.sizes[n - 1], (naive::effect_algebras(n), naive::effect_monoids(n)));
        if fast.algebras.len() != slow.0.len() || fast.monoids.len() != slow.1.len() {
            return Err(format!(
                "size {n}: search {}/{} vs naive {}/{}",
                fast.algebras.len(),
                fast.monoids.len(),
                slow.0.len(),
                slow.1.len()
            ));
        }
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!("counts {counts:?}, naive parity through {}", naive::NAIVE_MAX))
}

fn zero_divisor_trichotomy() -> Outcome {
    let census = run_census(8).map_err(|e| e.to_string())?;
    for size in &census.sizes {
        for s in &size.monoids {
            let m = FiniteMonoid::new(s.clone()).map_err(|e| e.to_string())?;
            let free = decompose::zero_divisor(&m).map_err(|e| e.to_string())?.is_none();
            if free != (s.size <= 2) {
                return Err(format!("size {}: zero-divisor free = {free}", s.size));
            }
            if MonoidFacts::of(s).map_err(|e| e.to_string())?.zero_divisor_free != free {
                return Err(format!("size {}: census facts disagree", s.size));
            }
        }
    }
    let class = decompose::classify(&Interval::with_tolerance(EPS)).map_err(|e| e.to_string())?;
    if class != Class::UnitInterval {
        return Err(format!("interval classified {}", class.label()));
    }
    Ok("free exactly at sizes 1 and 2; interval is UNIT_INTERVAL".into())
}

fn corner_embedding() -> Outcome {
    let census = run_census(8).map_err(|e| e.to_string())?;
    let mut corners = 0;
    for size in &census.sizes {
        for s in &size.monoids {
            let m = FiniteMonoid::new(s.clone()).map_err(|e| e.to_string())?;
            for p in m.elements().unwrap().into_iter().filter(|p| m.is_idempotent(p)) {
                let r = corner_iso_check(&m, &p, CheckMode::Exhaustive).map_err(|e| e.to_string())?;
                if !r.passed {
                    return Err(format!("size {} corner {p}: {:?}", s.size, r.violations.first()));
                }
                corners += 1;
            }
            let report = decompose::decompose(&m, CheckMode::Exhaustive).map_err(|e| e.to_string())?;
            if !report.embedding_verified {
                return Err(format!("size {}: {:?}", s.size, report.violations.first()));
            }
        }
    }
    let cx = parse_selector_monoid("cx:4").map_err(|e| e.to_string())?;
    let sampled = CheckMode::sampled(SAMPLES, SEED);
    let report = decompose::maximal_family(&cx).map_err(|e| e.to_string())?;
    if report.members.len() != 4 {
        return Err(format!("cx:4 family {:?}", report.family));
    }
    let emb = decompose::embed_check(&cx, &report, sampled).map_err(|e| e.to_string())?;
    if !emb.passed {
        return Err(format!("cx:4 embedding: {:?}", emb.violations.first()));
    }
    for p in &report.members {
        let r = corner_iso_check(&cx, p, sampled).map_err(|e| e.to_string())?;
        if !r.passed {
            return Err(format!("cx:4 corner: {:?}", r.violations.first()));
        }
    }
    Ok(format!("{corners} census corners exhaustive, cx:4 atom family sampled"))
}

fn convexity() -> Outcome {
    let m = Interval::with_tolerance(EPS);
    let mut rng = stream_rng(SEED, 8);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let lambda: f64 = rng.gen();
        let a = m.sample(&mut rng);
        let got = calculus::scalar_action(&m, lambda, &a).map_err(|e| e.to_string())?;
        worst = worst.max((got - lambda * a).abs());
    }
    if worst > 1e-6 {
        return Err(format!("largest gap {worst:e}"));
    }
    Ok(format!("largest gap {worst:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("axiom suites", axiom_suites),
        ("law suite", law_suite),
        ("series against closed forms", series_closed_forms),
        ("division identity", division_identity),
        ("census oracle", census_oracle),
        ("zero-divisor trichotomy", zero_divisor_trichotomy),
        ("corner and embedding checks", corner_embedding),
        ("convexity", convexity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}; {took:.2?})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
