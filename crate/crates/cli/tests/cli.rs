use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const SCHEMA: &str = include_str!("../schema/output.schema.json");

fn forge() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_nambu-forge"));
    for (k, _) in std::env::vars() {
        if k.starts_with("NAMBU_FORGE_") {
            c.env_remove(k);
        }
    }
    c
}

fn run(args: &[&str]) -> Output {
    forge().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = forge()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .trim_end()
        .to_string()
}

fn validated(o: &Output) -> Value {
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).unwrap();
    if let Err(errors) = compiled.validate(&doc) {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        panic!("{doc} violates the schema: {msgs:?}");
    }
    doc
}

#[test]
fn check_fi_example() {
    let o = run(&[
        "check-fi",
        "--bracket",
        "canonical3",
        "--degree",
        "2",
        "--trials",
        "100",
        "--seed",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "PASS residual=0 (100/100)");
}

#[test]
fn check_fi_is_independent_of_jobs() {
    let one = run(&[
        "--json",
        "check-fi",
        "--bracket",
        "linear4",
        "--seed",
        "3",
        "--trials",
        "20",
    ]);
    let four = run(&[
        "--json",
        "check-fi",
        "--bracket",
        "linear4",
        "--seed",
        "3",
        "--trials",
        "20",
        "--jobs",
        "4",
    ]);
    assert_eq!(o_ok(&one), o_ok(&four));
}

fn o_ok(o: &Output) -> Value {
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    validated(o)
}

#[test]
fn su2_star_example() {
    let o = run(&["star", "--product", "su2", "L1", "L2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "L1*L2 + nu*L3");
}

#[test]
fn coeffs_example() {
    let o = run(&["coeffs", "--a", "6", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    assert!(line.starts_with("a(6,3) recursion="), "{line}");
    assert!(line.ends_with("agree=true"), "{line}");
}

#[test]
fn json_matches_text() {
    let cases: &[&[&str]] = &[
        &["star", "--product", "su2", "L1", "L2"],
        &["factor", "x1^2 - x2^2"],
        &["nambu", "x1*x2", "x2", "x3"],
        &["sun", "L3", "L3"],
        &["sun", "--op", "exp", "L3"],
        &["equiv", "L1", "L2"],
        &["zariski", "--op", "j", "Z[x1*x2]"],
        &["coeffs", "--table", "3", "2"],
        &["spectrum", "--dim", "20", "--k", "3"],
        &["evolve", "--horizon", "0.05"],
    ];
    for args in cases {
        let text = run(args);
        let mut with_json = vec!["--json"];
        with_json.extend_from_slice(args);
        let doc = o_ok(&run(&with_json));
        assert_eq!(doc["ok"], Value::Bool(true));
        assert_eq!(doc["text"].as_str().unwrap(), stdout(&text), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let parse = run(&["factor", "x1 + * x2"]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("byte 5"));

    let unknown = run(&["star", "--product", "nope", "q", "p"]);
    assert_eq!(unknown.status.code(), Some(1));

    let flag = run(&["star", "--no-such-flag"]);
    assert_eq!(flag.status.code(), Some(2));

    let arity = run(&["--json", "nambu", "x1"]);
    assert_eq!(arity.status.code(), Some(2));
    let doc = validated(&arity);
    assert_eq!(doc["error"]["code"], "cli.usage");

    let domain = run(&["--json", "spectrum", "--dim", "4", "--k", "3"]);
    assert_eq!(domain.status.code(), Some(1));
    assert_eq!(validated(&domain)["ok"], Value::Bool(false));
}

#[test]
fn stdin_dash() {
    let o = run_stdin(&["star", "--product", "su2", "-", "-"], "L2\nL1\n");
    assert_eq!(stdout(&o), "L1*L2 - nu*L3");
}

#[test]
fn vars_override() {
    let o = run(&["--vars", "a,b,c", "nambu", "a", "b", "c"]);
    assert_eq!(stdout(&o), "1");
    let moyal = run(&["--vars", "x:y", "star", "x", "y"]);
    assert_eq!(stdout(&moyal), "x*y + nu");
}

#[test]
fn settings_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("forge.toml");
    std::fs::write(&cfg, "t-order = 2\nnu-order = 4\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let orders = |o: &Output| o_ok(o)["result"]["value"].as_array().unwrap().len();

    let from_file = run(&["--json", "--config", cfg, "star", "--op", "exp", "q"]);
    assert_eq!(orders(&from_file), 3);

    let env = forge()
        .args(["--json", "--config", cfg, "star", "--op", "exp", "q"])
        .env("NAMBU_FORGE_T_ORDER", "3")
        .output()
        .unwrap();
    assert_eq!(orders(&env), 4);

    let flag = forge()
        .args([
            "--json",
            "--config",
            cfg,
            "--t-order",
            "1",
            "star",
            "--op",
            "exp",
            "q",
        ])
        .env("NAMBU_FORGE_T_ORDER", "3")
        .output()
        .unwrap();
    assert_eq!(orders(&flag), 2);

    let eq = run(&["--json", "--config", cfg, "equiv", "L1", "L1"]);
    assert_eq!(o_ok(&eq)["result"]["nu_order"], 4);
}
