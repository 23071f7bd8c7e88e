use std::io::Write;
use std::process::{Command, Output};

fn sasaki(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sasaki")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn check_passing_battery_exits_zero() {
    let out = sasaki(&["check", "fixture:fig1", "--scheme", "S1", "--conditions", "B1,B2,A1,A2"]);
    assert_eq!(code(&out), 0, "{out:?}");
    let text = stdout(&out);
    for cond in ["B1", "B2", "A1", "A2"] {
        assert!(text.contains(&format!("{cond}: holds")), "{text}");
    }
}

#[test]
fn check_failing_condition_exits_one_with_witness_record() {
    let out = sasaki(&["check", "fixture:fano", "--conditions", "A1", "--format", "json-lines"]);
    assert_eq!(code(&out), 1);
    let rec: serde_json::Value = stdout(&out).trim().parse().unwrap();
    assert_eq!(rec["name"], "A1");
    assert_eq!(rec["holds"], false);
    assert_eq!(rec["witness"][0][0], "x");
    assert!(rec["checked_count"].as_u64().unwrap() > 0);
}

#[test]
fn check_defaults_to_stored_expectations() {
    // fano's stored verdict map contains failing entries, so the overall
    // check fails even though every recorded expectation is reproduced
    let out = sasaki(&["check", "fixture:fano"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("C1: holds"));
    assert!(stdout(&out).contains("A1: fails"));
}

#[test]
fn derive_reproduces_stored_tables_byte_for_byte() {
    let expected = "\
fig7_ex2: derived S2 pair on 6 elements
binop odot:
row 0: 0 0 0 0 0 0
row a: 0 a 0 0 0 a
row b: 0 0 b 0 0 b
row c: 0 a b c 0 c
row d: 0 a b 0 d d
row 1: 0 a b c d 1
binop imp:
row 0: 1 1 1 1 1 1
row a: b 1 b 1 1 1
row b: a a 1 1 1 1
row c: d d d 1 d 1
row d: c c c c 1 1
row 1: 0 a b c d 1
";
    let out = sasaki(&["derive", "fixture:fig7", "--scheme", "S2", "--print-tables"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), expected);
    // byte-determinism across runs
    let again = sasaki(&["derive", "fixture:fig7", "--scheme", "S2", "--print-tables"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn derive_scheme_kind_mismatch_is_a_usage_error() {
    let out = sasaki(&["derive", "fixture:fig1", "--scheme", "S3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn residual_roundtrip_and_failure() {
    let out = sasaki(&["residual", "fixture:fig1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("residual_imp: holds"));
    assert!(stdout(&out).contains("residual_odot: holds"));

    let out = sasaki(&["residual", "fixture:fig5_ex1", "--format", "json-lines"]);
    assert_eq!(code(&out), 1);
    let first: serde_json::Value = stdout(&out).lines().next().unwrap().parse().unwrap();
    assert_eq!(first["name"], "residual_imp");
    assert_eq!(first["holds"], false);
    assert_eq!(first["witness"][0][0], "row");
}

#[test]
fn translate_round_trips_through_a_file() {
    let out = sasaki(&["translate", "fixture:mo2"]);
    assert_eq!(code(&out), 0);
    let dumped = stdout(&out);
    assert!(dumped.contains("kind pseudoring"));

    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(dumped.as_bytes()).unwrap();
    let back = sasaki(&["translate", f.path().to_str().unwrap()]);
    assert_eq!(code(&back), 0);
    assert!(stdout(&back).contains("kind lattice"));
    // the recovered lattice has mo2's covers
    assert!(stdout(&back).contains("covers 0<a 0<b 0<c 0<d a<1 b<1 c<1 d<1"));
}

#[test]
fn product_and_subalgebra() {
    let out = sasaki(&["product", "fixture:fig7", "fixture:fig7"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("kind lambda with 36 elements"));

    let out = sasaki(&["subalgebra", "fixture:fig1", "--generators", "a,f", "--print-tables"]);
    assert_eq!(code(&out), 0);
    let sub = stdout(&out);
    assert!(sub.contains("kind lattice"));
    // closure picks up meet, join, and both complements (a' = h, f' = e)
    for el in ["0", "1", "h", "e"] {
        assert!(sub.split_whitespace().any(|w| w == el), "{sub}");
    }
}

#[test]
fn enumerate_unary_counts() {
    let out = sasaki(&["enumerate", "unary", "fixture:fig1", "--filters", "complementation"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("unary_ops: 6561"));

    let out = sasaki(&[
        "enumerate",
        "unary",
        "fixture:fig1",
        "--filters",
        "complementation,involution",
        "--print-tables",
    ]);
    assert!(stdout(&out).contains("unary_ops: 9"));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("unary neg:")).count(), 9);
}

#[test]
fn enumerate_completions_of_the_open_poset() {
    let out = sasaki(&["enumerate", "completions", "fixture:fig4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("completions: 20736 (exhausted: true)"));

    let capped = sasaki(&["enumerate", "completions", "fixture:fig4", "--bound", "10"]);
    assert!(stdout(&capped).contains("completions: 10 (exhausted: false)"));
}

#[test]
fn falsify_exit_codes() {
    let out = sasaki(&["falsify", "th4_b1_a1", "--bound", "3", "--expect-empty"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("0 hits"));

    let out = sasaki(&["falsify", "selftest_inverted", "--bound", "2", "--format", "json-lines"]);
    assert_eq!(code(&out), 1);
    let rec: serde_json::Value = stdout(&out).trim().parse().unwrap();
    assert_eq!(rec["holds"], false);
    assert!(rec["checked_count"].as_u64().unwrap() > 0);

    let out = sasaki(&["falsify", "no_such_conjecture", "--bound", "2"]);
    assert_eq!(code(&out), 2);

    // bare `falsify` lists the registry
    let out = sasaki(&["falsify"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).lines().any(|l| l == "th5"));
}

#[test]
fn fixtures_self_validate() {
    let out = sasaki(&["fixtures", "--format", "json-lines"]);
    assert_eq!(code(&out), 0);
    let lines: Vec<serde_json::Value> =
        stdout(&out).lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(lines.len(), 14);
    assert!(lines.iter().all(|r| r["holds"] == true));
}

#[test]
fn file_input_and_parse_errors() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(
        b"algebra twochain\nkind lattice\nelements 0 1\ncovers 0<1\nunary neg: 0=1 1=0\n",
    )
    .unwrap();
    let out = sasaki(&["check", f.path().to_str().unwrap(), "--conditions", "B1,A1,A2"]);
    assert_eq!(code(&out), 0, "{out:?}");

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    bad.write_all(b"algebra broken\nkind lattice\nelements\n").unwrap();
    let out = sasaki(&["check", bad.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    let out = sasaki(&["check", "fixture:nonexistent"]);
    assert_eq!(code(&out), 2);

    let out = sasaki(&["check", "fixture:fig1", "--scheme", "S9"]);
    assert_eq!(code(&out), 2);
}
