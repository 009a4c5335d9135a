use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    format!("file:{}", root.join(name).display())
}

fn emkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_emkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn shipped_fixtures_pass_the_check() {
    for name in ["bool2.json", "bool4.json", "bool8.json", "chain3.json"] {
        let out = emkit(&["check", "--model", &fixture(name)]);
        assert_eq!(code(&out), 0, "{name}: {}", stdout(&out));
    }
}

#[test]
fn corrupted_product_fails_with_a_triple() {
    let model = fixture("corrupted-bool4.json");
    let out = emkit(&["check", "--model", &model]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAIL"));

    let out = emkit(&["laws", "--model", &model, "--json"]);
    assert_eq!(code(&out), 1);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let first = &report["report"]["laws"][0];
    assert_eq!(first["law"], "effect-monoid-axioms");
    assert_eq!(first["passed"], false);
    assert_eq!(first["counterexample"]["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&emkit(&["check", "--model", "bogus:3"])), 2);
    assert_eq!(code(&emkit(&["check", "--model", "file:/no/such/file.json"])), 2);
    assert_eq!(code(&emkit(&["enumerate", "--max-size", "9"])), 2);
    assert_eq!(code(&emkit(&["check"])), 2);
}

#[test]
fn eval_outcomes() {
    let out = emkit(&["eval", "--model", "interval", "--let", "a=0.5", "--let", "b=0.25", "--expr", "div(b,a)"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "0.5");

    let out = emkit(&["eval", "--model", "interval", "--let", "a=0.6", "--expr", "a + a"]);
    assert_eq!(code(&out), 1);

    let out = emkit(&["eval", "--model", "interval", "--let", "a=0.6", "--expr", "a + * a"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("offset 4"), "{err}");
    assert!(err.contains('^'));

    let out = emkit(&["eval", "--model", "interval", "--expr", "c"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn enumerate_prints_one_line_per_size() {
    let out = emkit(&["enumerate", "--max-size", "5"]);
    assert_eq!(code(&out), 0);
    let lines: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .filter(|l| l.starts_with('{'))
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let algebras: Vec<u64> = lines.iter().map(|l| l["algebras"].as_u64().unwrap()).collect();
    let monoids: Vec<u64> = lines.iter().map(|l| l["monoids"].as_u64().unwrap()).collect();
    assert_eq!(algebras, [1, 1, 1, 3, 4]);
    assert_eq!(monoids, [1, 1, 0, 1, 0]);
}

#[test]
fn enumerate_writes_representatives() {
    let dir = std::env::temp_dir().join(format!("emkit-out-{}", std::process::id()));
    let out = emkit(&["enumerate", "--max-size", "4", "--out", dir.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(dir.join("census.json").exists());
    let monoid = dir.join("monoid-4-0.json");
    let out = emkit(&["check", "--model", &format!("file:{}", monoid.display())]);
    assert_eq!(code(&out), 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_output_is_deterministic() {
    let runs = [
        vec!["check", "--model", "cx:3", "--samples", "500", "--seed", "7", "--json"],
        vec!["laws", "--model", "interval", "--samples", "300", "--json"],
        vec!["decompose", "--model", "boolean:3", "--json"],
    ];
    for args in &runs {
        let a = emkit(args);
        let b = emkit(args);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
