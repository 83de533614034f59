use std::path::PathBuf;
use std::process::{Command, Output};

use crinv_cli::jetfile::JetFile;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn crinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crinv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn with_fixture(cmd: &[&str], name: &str) -> Output {
    let path = fixture(name);
    let mut args = cmd.to_vec();
    args.push("--jet");
    args.push(path.to_str().unwrap());
    crinv(&args)
}

#[test]
fn fixtures_round_trip() {
    for name in ["v.json", "w1w1bar.json", "zero.json", "generic4.json", "pluriharmonic.json", "v_low_validity.json"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let file = JetFile::parse(&text).unwrap();
        assert_eq!(file.to_text(), text, "{name}");
        let jet = file.to_jet().unwrap();
        assert_eq!(JetFile::from_jet(&jet).unwrap(), file, "{name}");
    }
}

#[test]
fn extend_v() {
    let o = with_fixture(&["extend"], "v.json");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("terms: [2 entries]\n  [-1/2i] x0^-1*x2\n  [1/2i] xb0^-1*xb2\n"), "{out}");
}

#[test]
fn extend_zero_is_empty() {
    let o = with_fixture(&["extend"], "zero.json");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("terms: [0 entries]"));
}

#[test]
fn low_validity_exits_3() {
    assert_eq!(with_fixture(&["extend"], "v_low_validity.json").status.code(), Some(3));
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"n\": 2, \"terms\": 7}").unwrap();
    let o = crinv(&["extend", "--jet", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(with_fixture(&["q"], "bad_reality.json").status.code(), Some(2));
    assert_eq!(crinv(&["schemes"]).status.code(), Some(2));
}

#[test]
fn schemes_at_n2() {
    let o = crinv(&["schemes", "--n", "2"]);
    assert!(stdout(&o).contains("count: 2\n"));
}

#[test]
fn weyl_n2_vanishes() {
    let o = crinv(&["weyl", "--n", "2", "--generic"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("S1: (1,1)(1,1) m=[0,1;1,0] = 0\n"));
    assert!(out.contains("S2: (1,1)(1,1) m=[1,0;0,1] = 0\n"));
}

#[test]
fn unknown_scheme_exits_2() {
    assert_eq!(crinv(&["weyl", "--n", "2", "--scheme", "S3"]).status.code(), Some(2));
}

#[test]
fn q_of_pluriharmonic_sample_is_zero() {
    let o = with_fixture(&["q"], "pluriharmonic.json");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("is_zero: true"));
    let o = with_fixture(&["q"], "generic4.json");
    assert!(stdout(&o).contains("is_zero: false"));
}

#[test]
fn q_generic_n2() {
    let o = crinv(&["q", "--generic", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let line = out.lines().find(|l| l.starts_with("polynomial: ")).unwrap();
    assert!(line.ends_with("*A^0_(2)(2)"), "{line}");
    assert!(!line.contains('+'));
}

#[test]
fn normalform_both_slices() {
    for slice in ["n0", "n1"] {
        let o = with_fixture(&["normalform", "--slice", slice], "generic4.json");
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).contains("check round trip: pass"));
    }
}

#[test]
fn classify_n2_weight4() {
    let o = crinv(&["classify", "--n", "2", "--weight", "4", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("dimension: 1\nbasis: [1 entries]\n  1*A^0_(2)(2)\n"), "{out}");
}

#[test]
fn jetiso_n2() {
    let o = crinv(&["jetiso", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("w=3: dim N0=2 dim H0=2 rank T=2"));
}

#[test]
fn selfcheck_n2_seed7_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = crinv(&["selfcheck", "--n", "2", "--seed", "7", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["command"], "selfcheck");
    assert_eq!(json["seed"], 7);
    assert!(json.get("profile").is_none());
}

#[test]
fn profile_adds_counts() {
    let o = crinv(&["extend", "--profile", "--jet", fixture("w1w1bar.json").to_str().unwrap()]);
    assert!(stdout(&o).contains("profile ambient terms: "));
}

#[test]
fn thread_count_does_not_change_output() {
    let a = crinv(&["--threads", "1", "selfcheck", "--n", "2", "--samples", "2"]);
    let b = crinv(&["--threads", "3", "selfcheck", "--n", "2", "--samples", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
