//! CLI acceptance: both demo scenarios produce byte-stable machine
//! reports matching the golden files, eval(x^4+4) = 3 on the
//! sqrt-minus-2 chain, and the exit-code contract holds (0 success,
//! 1 refuted/failed check, 2 input errors).

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_maclane"))
}

fn manifest_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(manifest_path(&format!("tests/golden/{name}")))
        .unwrap_or_else(|e| panic!("golden file {name}: {e}"))
}

fn scenario_arg(name: &str) -> String {
    manifest_path(&format!("tests/scenarios/{name}")).display().to_string()
}

#[test]
fn criterion_10_scenario_reports_are_byte_stable() {
    for name in ["sqrt-minus-2", "char2-xsq-t"] {
        let scn = scenario_arg(&format!("{name}.scn"));
        let first = run(&["--scenario", &scn, "--format", "machine"]);
        let second = run(&["--scenario", &scn, "--format", "machine"]);
        assert_eq!(first.status.code(), Some(0), "{name} should exit 0");
        assert_eq!(stdout(&first), stdout(&second), "{name} report not deterministic");
        assert_eq!(
            stdout(&first),
            golden(&format!("{name}.report.txt")),
            "{name} diverges from its golden report"
        );
    }
    println!("[PASS] criterion 10a: scenario machine reports byte-stable against goldens");
}

#[test]
fn criterion_10_demo_reports_are_byte_stable() {
    for name in ["sqrt-minus-2", "char2-xsq-t"] {
        let first = run(&["--demo", name, "--format", "machine"]);
        let second = run(&["--demo", name, "--format", "machine"]);
        assert_eq!(first.status.code(), Some(0), "demo {name} should exit 0 (all checks pass)");
        assert_eq!(stdout(&first), stdout(&second), "demo {name} not deterministic");
        assert_eq!(
            stdout(&first),
            golden(&format!("demo-{name}.report.txt")),
            "demo {name} diverges from its golden report"
        );
    }
    println!("[PASS] criterion 10b: demo machine reports byte-stable against goldens");
}

#[test]
fn criterion_10_eval_anchor() {
    let scn = scenario_arg("sqrt-minus-2.scn");
    let output = run(&["--scenario", &scn, "--format", "machine"]);
    let text = stdout(&output);
    assert!(
        text.contains("query: 1 ; eval ; f=x^4+4\nresult: value=3\nstatus: ok"),
        "eval(x^4+4) = 3 missing from report:\n{text}"
    );
    println!("[PASS] criterion 10c: eval(x^4+4) = 3 on the sqrt-minus-2 chain");
}

#[test]
fn criterion_10_exit_codes() {
    // Input error: gamma not strictly above the current value of Q.
    let dir = tempdir();
    let bad = dir.join("bad-gamma.scn");
    std::fs::write(&bad, "field padic 2\nstep x ; 1/2\nstep x^2+2 ; 1\n").unwrap();
    let output = run(&["--scenario", &bad.display().to_string()]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr.clone()).unwrap();
    assert!(
        stderr.contains("gamma not greater than current value of Q"),
        "strictness violation not named: {stderr}"
    );

    // Refutation: exit 1 and the counterexample is x.
    let refute = dir.join("refute.scn");
    std::fs::write(&refute, "field padic 2\nstep x ; 1/2\nrefute x^2+2\n").unwrap();
    let output = run(&["--scenario", &refute.display().to_string(), "--format", "machine"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).contains("result: counterexample=x\n"));

    // Unknown demo name and missing file are input errors.
    assert_eq!(run(&["--demo", "unknown"]).status.code(), Some(2));
    assert_eq!(run(&["--scenario", "/nonexistent/file.scn"]).status.code(), Some(2));

    // Malformed polynomial: syntax error with position.
    let syntax = dir.join("syntax.scn");
    std::fs::write(&syntax, "field padic 2\nstep x ; 1/2\neval x^2 + $\n").unwrap();
    let output = run(&["--scenario", &syntax.display().to_string()]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("syntax error"), "syntax error not reported: {stderr}");

    println!("[PASS] criterion 10d: exit-code contract (0 ok, 1 failed check, 2 input error)");
}

#[test]
fn oracle_flag_cross_checks_epsilon() {
    let dir = tempdir();
    let scn = dir.join("oracle.scn");
    std::fs::write(&scn, "field padic 2\nstep x ; 1/2\nstep x^2+2 ; 2\nepsilon x^4+4\n").unwrap();
    let output = run(&["--scenario", &scn.display().to_string(), "--format", "machine", "--oracle"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("result: oracle-agrees=yes\n"));
}

#[test]
fn budget_flag_overrides_scenario_budget() {
    let scn = scenario_arg("sqrt-minus-2.scn");
    let output = run(&[
        "--scenario",
        &scn,
        "--format",
        "machine",
        "--budget",
        "0,1,-1 ; 2",
    ]);
    assert!(stdout(&output).starts_with("maclane-report 1\n"));
    assert!(stdout(&output).contains("budget: 0,1,-1 ; maxdeg=2\n"));
}

/// Echoed polynomials in the machine report re-parse to the same
/// canonical form (the report round-trips through the input grammar).
#[test]
fn report_echo_round_trips() {
    use maclane::{BaseField, Poly};
    let scn = scenario_arg("sqrt-minus-2.scn");
    let output = run(&["--scenario", &scn, "--format", "machine"]);
    let base = BaseField::padic(2).unwrap();
    let mut seen = 0;
    for line in stdout(&output).lines() {
        for part in line.split(" ; ") {
            for prefix in ["f=", "Q=", "P=", "A=", "B=", "key="] {
                if let Some(poly_text) = part.strip_prefix(prefix) {
                    let parsed = Poly::parse(base, poly_text).unwrap();
                    assert_eq!(parsed.to_string(), poly_text);
                    seen += 1;
                }
            }
        }
    }
    assert!(seen > 10, "expected many echoed polynomials, saw {seen}");
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("maclane-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
