//! `emkit`: checks, law suites, decomposition, enumeration and evaluation
//! for effect algebras and effect monoids.
//!
//! Exit status is 0 on success, 1 when a check, law or classification
//! fails, and 2 on usage, parse and I/O errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use emkit_core::decompose::{classify, decompose, Class, Decomposable};
use emkit_core::expr::{self, Environment};
use emkit_core::laws::laws_suite;
use emkit_core::models::{parse_selector, AnyModel, Selected};
use emkit_core::{
    check_effect_algebra, check_effect_monoid, save_structure, AxiomReport, CheckMode, EffectAlgebra, Error,
};
use emkit_enumerate::{run_census_with, Config};
use serde::Serialize;

const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Parser)]
#[command(name = "emkit", version, about = "Effect algebra and effect monoid toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the effect algebra or effect monoid axioms.
    Check(CheckArgs),
    /// Run the law suite.
    Laws(LawsArgs),
    /// Find a maximal orthogonal family of idempotents and verify the embedding.
    Decompose(DecomposeArgs),
    /// Enumerate finite effect algebras and effect monoids.
    Enumerate(EnumerateArgs),
    /// Evaluate an expression.
    Eval(EvalArgs),
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    model: String,
    #[arg(long, conflicts_with = "samples")]
    exhaustive: bool,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct LawsArgs {
    #[arg(long)]
    model: String,
    /// Samples per law; on listable models, only for laws too large to run exhaustively.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    eps: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    model: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    max_size: usize,
    #[arg(long)]
    algebras_only: bool,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    model: String,
    /// A binding `name=literal`; repeatable.
    #[arg(long = "let", value_name = "NAME=LITERAL")]
    bindings: Vec<String>,
    #[arg(long)]
    expr: String,
}

/// Failure of an invocation, by exit status.
enum Failure {
    /// Checks ran and something failed.
    Violation(String),
    /// The invocation could not be carried out.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check(a) => check(a),
        Command::Laws(a) => laws(a),
        Command::Decompose(a) => decompose_cmd(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Eval(a) => eval(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn monoid(selector: &str) -> Result<AnyModel, Failure> {
    match parse_selector(selector)? {
        Selected::Monoid(m) => Ok(m),
        Selected::Algebra(_) => Err(Error::MissingProduct.into()),
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

fn pass_fail(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn default_mode(listable: bool, seed: u64) -> CheckMode {
    if listable {
        CheckMode::Exhaustive
    } else {
        CheckMode::sampled(DEFAULT_SAMPLES, seed)
    }
}

fn describe_mode(mode: CheckMode) -> String {
    match mode {
        CheckMode::Exhaustive => "exhaustive".into(),
        CheckMode::Sampled { count, seed } => format!("{count} samples, seed {seed}"),
    }
}

#[derive(Serialize)]
struct CheckJson<'a> {
    command: &'static str,
    model: String,
    seed: u64,
    structure: &'static str,
    outcome: &'static str,
    report: &'a AxiomReport,
}

fn check(a: CheckArgs) -> Outcome {
    let selected = parse_selector(&a.model)?;
    let (listable, describe) = match &selected {
        Selected::Monoid(m) => (m.is_enumerable(), m.describe()),
        Selected::Algebra(m) => (true, m.describe()),
    };
    let mode = match (a.exhaustive, a.samples) {
        (true, _) => CheckMode::Exhaustive,
        (false, Some(n)) => CheckMode::sampled(n, a.seed),
        (false, None) => default_mode(listable, a.seed),
    };
    let start = Instant::now();
    let (structure, report) = match &selected {
        Selected::Monoid(m) => ("effect monoid", check_effect_monoid(m, mode)?),
        Selected::Algebra(m) => ("effect algebra", check_effect_algebra(m, mode)?),
    };
    if a.json {
        print_json(&CheckJson {
            command: "check",
            model: describe,
            seed: a.seed,
            structure,
            outcome: if report.passed { "pass" } else { "fail" },
            report: &report,
        });
    } else {
        println!("model: {describe}");
        println!("mode: {}", describe_mode(mode));
        println!("{structure}: {}", pass_fail(report.passed));
        println!("checks: {}", report.checks);
        if !report.passed {
            println!("violations: {}", report.violation_count);
            for v in &report.violations {
                println!("  {}: {}", v.axiom, v.witness.join(", "));
            }
        }
        println!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Violation(String::new()))
    }
}

#[derive(Serialize)]
struct LawsJson<'a> {
    command: &'static str,
    model: String,
    seed: u64,
    eps: f64,
    outcome: &'static str,
    report: &'a emkit_core::laws::LawReport,
}

fn laws(a: LawsArgs) -> Outcome {
    let m = monoid(&a.model)?.with_tolerance(a.eps)?;
    let mode = if m.is_enumerable() {
        CheckMode::Exhaustive
    } else {
        CheckMode::sampled(a.samples, a.seed)
    };
    let start = Instant::now();
    let report = laws_suite(&m, mode, a.samples);
    if a.json {
        print_json(&LawsJson {
            command: "laws",
            model: m.describe(),
            seed: a.seed,
            eps: a.eps,
            outcome: if report.passed { "pass" } else { "fail" },
            report: &report,
        });
    } else {
        println!("model: {}", m.describe());
        println!("mode: {}, eps {:e}", describe_mode(mode), a.eps);
        for law in &report.laws {
            let status = if !law.applicable {
                "SKIP"
            } else {
                pass_fail(law.passed)
            };
            let scope = if law.exhaustive { "exhaustive" } else { "sampled" };
            print!("{status} {:<44} {:>9} checks ({scope})", law.law, law.checks);
            if law.violations > 0 {
                print!(", {} violations", law.violations);
            }
            println!();
            if let Some(w) = &law.counterexample {
                let witness = w.witness.join(", ");
                if w.axiom == law.law {
                    println!("     counterexample: {witness}");
                } else {
                    println!("     counterexample ({}): {witness}", w.axiom);
                }
            }
        }
        let applicable = report.laws.iter().filter(|l| l.applicable).count();
        let passed = report.laws.iter().filter(|l| l.applicable && l.passed).count();
        println!("laws: {} ({passed}/{applicable})", pass_fail(report.passed));
        println!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Violation(String::new()))
    }
}

#[derive(Serialize)]
struct DecomposeJson<'a> {
    command: &'static str,
    model: String,
    class: Option<Class>,
    outcome: &'static str,
    report: &'a emkit_core::decompose::DecompositionReport<emkit_core::models::Value>,
}

fn decompose_cmd(a: DecomposeArgs) -> Outcome {
    let m = monoid(&a.model)?;
    let mode = default_mode(m.is_enumerable(), 0);
    let report = decompose(&m, mode)?;
    let class = match classify(&m) {
        Ok(c) => Some(c),
        Err(Error::NotEnumerable(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let mismatch = match (class, m.registered_class()) {
        (Some(Class::Unclassified), _) => true,
        (Some(found), Some(declared)) => found != declared && m.is_enumerable(),
        _ => false,
    };
    let passed = report.embedding_verified && report.violations.is_empty() && !mismatch;
    if a.json {
        print_json(&DecomposeJson {
            command: "decompose",
            model: m.describe(),
            class,
            outcome: if passed { "pass" } else { "fail" },
            report: &report,
        });
    } else {
        println!("model: {}", m.describe());
        println!("mode: {}", describe_mode(mode));
        println!("class: {}", class.map_or("unknown", Class::label));
        println!("family: [{}]", report.family.join(", "));
        let tags: Vec<&str> = report
            .tags
            .iter()
            .map(|t| match t {
                emkit_core::decompose::Tag::Halvable => "halvable",
                emkit_core::decompose::Tag::Boolean => "boolean",
            })
            .collect();
        println!("tags: [{}]", tags.join(", "));
        println!(
            "boolean part: unit {} ({} members)",
            report.boolean_part.unit, report.boolean_part.members
        );
        println!(
            "convex part: unit {} ({} members)",
            report.convex_part.unit, report.convex_part.members
        );
        println!(
            "embedding: {}{}",
            pass_fail(report.embedding_verified),
            if report.surjectivity_checked { " (bijective)" } else { "" }
        );
        for v in &report.violations {
            println!("  {}: {}", v.axiom, v.witness.join(", "));
        }
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Violation(String::new()))
    }
}

#[derive(Serialize)]
struct CensusLine {
    size: usize,
    algebras: usize,
    monoids: Option<usize>,
}

fn write_file(path: &std::path::Path, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn enumerate(a: EnumerateArgs) -> Outcome {
    let cfg = Config {
        jobs: a.jobs,
        ..Config::default()
    };
    if a.jobs == Some(0) {
        return Err(Failure::Usage("--jobs must be positive".into()));
    }
    let result = run_census_with(a.max_size, &cfg, a.algebras_only)?;
    let lines: Vec<CensusLine> = result
        .sizes
        .iter()
        .map(|c| CensusLine {
            size: c.size,
            algebras: c.algebras.len(),
            monoids: (!a.algebras_only).then_some(c.monoids.len()),
        })
        .collect();
    for l in &lines {
        println!("{}", serde_json::to_string(l).expect("census serializes"));
    }
    if let Some(dir) = &a.out {
        std::fs::create_dir_all(dir)
            .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", dir.display())))?;
        for c in &result.sizes {
            for (i, s) in c.algebras.iter().enumerate() {
                write_file(&dir.join(format!("algebra-{}-{}.json", c.size, i)), &save_structure(s))?;
            }
            for (i, s) in c.monoids.iter().enumerate() {
                write_file(&dir.join(format!("monoid-{}-{}.json", c.size, i)), &save_structure(s))?;
            }
        }
        let mut summary = serde_json::to_vec_pretty(&lines).expect("census serializes");
        summary.push(b'\n');
        write_file(&dir.join("census.json"), &summary)?;
    }
    eprintln!("elapsed: {:.3}s", result.elapsed.as_secs_f64());
    let anomalies = result.anomalies();
    if anomalies.is_empty() {
        Ok(())
    } else {
        let list: Vec<String> = anomalies.iter().map(|(n, i)| format!("monoid-{n}-{i}")).collect();
        Err(Failure::Violation(format!(
            "monoids that are not commutative and Boolean: {}",
            list.join(", ")
        )))
    }
}

fn eval(a: EvalArgs) -> Outcome {
    let m = monoid(&a.model)?;
    let term = expr::parse(&a.expr).map_err(|e| {
        Failure::Usage(format!(
            "cannot parse expression {e}\n  {}\n  {}^",
            a.expr,
            " ".repeat(a.expr[..e.offset.min(a.expr.len())].chars().count())
        ))
    })?;
    let mut env = Environment::new();
    for binding in &a.bindings {
        let (name, literal) = binding
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("binding `{binding}` is not of the form name=literal")))?;
        let valid_name = name.starts_with(|c: char| c.is_ascii_lowercase())
            && name.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
            && !expr::KEYWORDS.contains(&name);
        if !valid_name {
            return Err(Failure::Usage(format!("`{name}` is not a variable name")));
        }
        env.bind(name, m.parse_element(literal)?);
    }
    match expr::eval(&term, &env, &m) {
        Ok(v) => {
            println!("{}", m.format_element(&v));
            Ok(())
        }
        Err(e) => Err(Failure::Violation(format!("error: {e}"))),
    }
}
