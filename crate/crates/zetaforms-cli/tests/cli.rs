//! End-to-end tests against the built binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetaforms"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn form_json_report_is_well_formed_and_passes() {
    let out = run(&[
        "form", "--D", "2", "--s", "5", "--n", "2", "--digits", "40", "--json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["schema"], "zetaforms/1");
    assert_eq!(v["pass"], true);
    let forms = v["results"]["forms"].as_array().unwrap();
    assert_eq!(forms.len(), 2);
    assert!(forms[0]["a"].get("3").is_some() && forms[0]["a"].get("5").is_some());
    let certs = v["results"]["certificates"].as_array().unwrap();
    assert!(certs.iter().all(|c| c["pass"] == true));
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let args = [
        "verify-eq1",
        "--D",
        "1",
        "--s",
        "3",
        "--n",
        "2",
        "--digits",
        "35",
        "--json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(
        a.stdout, b.stdout,
        "identical configs must print identical bytes"
    );
}

#[test]
fn combine_eliminates_zeta3_exactly() {
    let out = run(&[
        "combine",
        "--D",
        "2",
        "--s",
        "5",
        "--n",
        "2",
        "--weights",
        "-1,7",
        "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"]["zeta_form"]["c"]["3"], "0");
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["name"] == "zeta3-eliminated" && c["pass"] == true));
}

#[test]
fn verify_theorem1_passes_at_modest_digits() {
    let out = run(&[
        "verify-theorem1",
        "--D",
        "1",
        "--s",
        "3",
        "--n",
        "2",
        "--digits",
        "12",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("overall: pass"));
}

#[test]
fn invalid_parameters_name_the_constraint_and_exit_2() {
    let out = run(&["form", "--D", "2", "--s", "4", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("3D - 1"), "{err}");

    let out = run(&["form", "--D", "1", "--s", "2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("even"));

    let out = run(&["form", "--D", "1", "--s", "2", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("allow-degenerate-n"));

    let out = run(&[
        "combine",
        "--D",
        "2",
        "--s",
        "5",
        "--n",
        "2",
        "--weights",
        "1,2,3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn odd_n_is_gated_behind_the_override() {
    let out = run(&["form", "--D", "2", "--s", "5", "--n", "3", "--allow-odd-n"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = run(&["form", "--D", "1", "--s", "3", "--n", "3", "--allow-odd-n"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_output_has_a_header_row() {
    let out = run(&[
        "form", "--D", "1", "--s", "3", "--n", "2", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("j,kind,i,value\n"), "{text}");

    let out = run(&[
        "verify-eq1",
        "--D",
        "1",
        "--s",
        "3",
        "--n",
        "2",
        "--digits",
        "30",
        "--format",
        "csv",
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("check,pass,residual,bound\n"), "{text}");
}

#[test]
fn growth_table_reports_positive_values() {
    let out = run(&[
        "growth", "--D", "1", "--s", "2", "--n-list", "2,4,6", "--digits", "25", "--format", "csv",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.starts_with("n,value,err,nth_root,positive\n"));
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn verify_filter_hand_value_case() {
    let out = run(&[
        "verify-filter",
        "--D",
        "2",
        "--s",
        "5",
        "--n",
        "0",
        "--allow-degenerate-n",
        "--j",
        "1",
        "--x",
        "1/2",
        "--digits",
        "25",
        "--json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    let detail = v["results"]["details"]["j1-x(1/2)"].as_str().unwrap();
    assert!(detail.contains("2.2222222222"), "{detail}");
}

#[test]
fn all_command_runs_the_applicable_checks() {
    let out = run(&[
        "all", "--D", "1", "--s", "3", "--n", "2", "--digits", "20", "--json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    for expected in [
        "integrality-j1",
        "eq1-j1",
        "positive-j1",
        "theorem1-j1",
        "pfq-j1",
    ] {
        assert!(
            names.iter().any(|n| n.starts_with(expected)),
            "missing {expected}: {names:?}"
        );
    }
    // kappa = 2 parameters skip the series verifications instead of failing.
    let out = run(&[
        "all", "--D", "1", "--s", "2", "--n", "2", "--digits", "20", "--json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    assert!(!v["results"]["skipped"].as_array().unwrap().is_empty());
}
