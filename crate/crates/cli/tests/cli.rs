use std::path::PathBuf;
use std::process::{Command, Output};

fn ozeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ozeta")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ozeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn local_table() {
    let o = ozeta(&["local", "--q", "2", "--r", "2", "--m", "1", "--N", "8"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("degree  hey  slice"));
    assert!(out.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["8", "31", "563"]));
    assert!(out.contains("PASS slice series by both routes"));
}

#[test]
fn hey_suite_reports_matched_counts() {
    let o = ozeta(&["oracle-verify", "--suite", "hey", "--q", "2", "--r", "2", "--n", "6"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("PASS hey series vs sublattices: matched counts 3, 7, 15"));
}

#[test]
fn global_preset() {
    let o = ozeta(&["global", "--preset", "three_lines", "--d", "2", "--e", "2", "--q", "3", "--N", "6"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("order_zeta  ratio  ramified_ratio  euler_specialization"));
    assert!(out.contains("PASS ratio to the matrix algebra"));
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["oracle-verify", "--suite", "plane", "--q", "2", "--n", "4"][..],
        &["oracle-verify", "--suite", "symbol", "--q", "3", "--n", "2"],
        &["oracle-verify", "--suite", "tower", "--q", "2", "--n", "3"],
        &["oracle-verify", "--suite", "segal", "--n", "7"],
        &["oracle-verify", "--suite", "p2", "--q", "2", "--n", "2"],
        &["hecke-verify", "--q", "2", "--r", "2", "--m", "2", "--N", "8"],
        &["euler", "--surface", "P2", "--d", "1", "--q", "2", "--N", "6"],
    ] {
        let o = ozeta(args);
        assert!(o.status.success(), "{args:?}: {}{}", stdout(&o), stderr(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn csv_and_poincare_columns() {
    let o = ozeta(&["poincare", "--surface", "P2", "--d", "1", "--q", "2", "--N", "2", "--format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("series,degree,z0,z1,z2,z3,z4,z5,z6,z7,z8"));
    assert!(out.contains("poincare,2,1,0,2,0,3,0,2,0,1"));
    assert!(out.contains("euler_specialization,2,9"));
}

#[test]
fn json_round_trips_through_compare() {
    let args = ["global", "--surface", "P2", "--d", "2", "--q", "3", "--N", "5"];
    let first = ozeta(&[&args[..], &["--format", "json"]].concat());
    assert!(first.status.success());
    let saved = stdout(&first);
    let again = ozeta(&[&args[..], &["--format", "json"]].concat());
    assert_eq!(saved, stdout(&again), "output is deterministic");

    let path = scratch("global.json", &saved);
    let o = ozeta(&[&args[..], &["--compare", path.to_str().unwrap()]].concat());
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("PASS compare order_zeta"));

    let mut report: serde_json::Value = serde_json::from_str(&saved).unwrap();
    report["series"][0]["coefficients"][3] = "12345".into();
    let path = scratch("tampered.json", &report.to_string());
    let o = ozeta(&[&args[..], &["--compare", path.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("first difference at degree 3"), "{err}");
    assert!(err.contains("previous order_zeta = 12345"), "{err}");
}

#[test]
fn config_file_with_flag_override() {
    let path = scratch(
        "job.json",
        r#"{"command": "local", "q": "3", "r": "1", "m": "2", "truncation": "4", "format": "csv"}"#,
    );
    let o = ozeta(&["--config", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("series,degree,coefficient\n"));
    assert!(stdout(&o).contains("slice,2,9"));
    let o = ozeta(&["--config", path.to_str().unwrap(), "local", "--m", "1"]);
    assert!(stdout(&o).contains("slice,2,4"));
}

#[test]
fn inline_l_data() {
    // P^1 as explicit factors: 1 / ((1 - t)(1 - q t)).
    let path = scratch(
        "inline.json",
        r#"{"command": "global", "q": "2", "d": "1", "truncation": "3",
            "surface": {"factors": [
                {"weight": "0", "poly": ["1", "-1"], "multiplicity": "1"},
                {"weight": "2", "poly": ["1", "-2"], "multiplicity": "1"}]}}"#,
    );
    let o = ozeta(&["--config", path.to_str().unwrap(), "--format", "csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let catalog = ozeta(&["global", "--surface", "P1", "--d", "1", "--q", "2", "--N", "3", "--format", "csv"]);
    let rows = |s: String| s.lines().filter(|l| l.starts_with("order_zeta")).map(String::from).collect::<Vec<_>>();
    assert_eq!(rows(stdout(&o)), rows(stdout(&catalog)));
}

#[test]
fn schema_errors_carry_paths() {
    let path = scratch("bad.json", r#"{"command": "global", "strata": [{"cover": {"catalog": "P1"}, "e": 2}]}"#);
    let o = ozeta(&["--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("at `strata[0].e`"), "{}", stderr(&o));
    let path = scratch("unknown.json", r#"{"command": "local", "colour": "red"}"#);
    let o = ozeta(&["--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("colour"));
}

#[test]
fn bounds_are_rejected() {
    let o = ozeta(&["local", "--q", "2", "--N", "25"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exceeds the cap 24"));
    assert!(ozeta(&["local", "--q", "2", "--N", "25", "--max-N", "30"]).status.success());
    let o = ozeta(&["census", "--kind", "sublattices", "--q", "2", "--r", "4", "--n", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = ozeta(&["oracle-verify", "--suite", "p2", "--q", "2", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("n <= 2"));
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_ozeta"))
            .args(["census", "--kind", "sublattices", "--q", "2", "--r", "2", "--n", "6"])
            .env("OZETA_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    assert!(one.status.success());
    assert_eq!(stdout(&one), stdout(&run("4")));
    assert_eq!(run("zero").status.code(), Some(2));
}
