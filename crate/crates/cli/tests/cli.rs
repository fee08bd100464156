use std::path::Path;
use std::process::{Command, Output};

const VENDORED: &str = include_str!("../../core/data/zeta_zeros_100k.txt");

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selberg-li")).args(args).env("RUST_LOG", "error").output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.records().map(|x| x.unwrap().iter().map(String::from).collect()).collect()
}

#[test]
fn zeta_first_fifty_are_positive() {
    let o = run(&["li", "--preset", "riemann-zeta", "--n", "1..50", "--methods", "all"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 50);
    assert!(rows.iter().all(|r| r.last().unwrap() == "positive"));
    assert_eq!(rows[0][0], "1");
    assert!(rows[0][3].starts_with("2.309570896612103381431024790649529162"));
}

#[test]
fn toy_descriptor_has_no_arithmetic_route() {
    let o = run(&["li", "--preset", "gl(3)-toy", "--methods", "arithmetic"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("lacks arithmetic data"));
}

#[test]
fn n_zero_row() {
    let o = run(&["li", "--preset", "riemann-zeta", "--n", "0..0"]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "0");
    assert_eq!(rows[0][1], "0");
}

#[test]
fn hn_single_row_of_zeros() {
    let o = run(&["hn", "--n", "1..1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 1);
    for col in ["direct", "main_terms", "residual", "an_predicted", "ratio"] {
        let i = header.iter().position(|h| *h == col).unwrap();
        assert_eq!(rows[0][i], "0", "{col}");
    }
}

#[test]
fn hn_columns_and_log_sweep() {
    let o = run(&["hn", "--m", "1", "--k", "2", "--n", "2..64", "--log", "--count", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("n,direct,direct_error_bound,main_terms,residual,an_predicted,ratio,error_bound,"));
    let ns: Vec<String> = csv_rows(&text).into_iter().map(|r| r[0].clone()).collect();
    assert_eq!(ns.first().unwrap(), "2");
    assert_eq!(ns.last().unwrap(), "64");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["li", "--preset", "zeta", "--precision-bits", "64"]).status.code(), Some(1));
    assert_eq!(run(&["li", "--preset", "nope"]).status.code(), Some(1));
    assert_eq!(run(&["li", "--preset", "zeta", "--n", "5..1"]).status.code(), Some(1));
    assert_eq!(run(&["li"]).status.code(), Some(1));
    assert_eq!(run(&["li", "--preset", "hecke(11)", "--methods", "zero-sum"]).status.code(), Some(1));
    assert_eq!(run(&["hn", "--k", "0"]).status.code(), Some(1));
}

#[test]
fn bad_zero_file_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("zeros.txt");
    std::fs::write(&p, "14.13\n12.0\n").unwrap();
    let o = run(&["li", "--preset", "zeta", "--zeros", p.to_str().unwrap(), "--n", "1..2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

fn selftest(extra: &[&str]) -> (bool, Vec<String>) {
    let mut args = vec!["selftest"];
    args.extend_from_slice(extra);
    let o = run(&args);
    let passed = stdout(&o).lines().filter(|l| l.starts_with("PASS")).map(|l| l.split(':').next().unwrap().to_string()).collect();
    (o.status.success(), passed)
}

#[test]
fn selftest_passes_at_two_precisions() {
    let (ok128, set128) = selftest(&["--precision-bits", "128"]);
    let (ok512, set512) = selftest(&["--precision-bits", "512"]);
    assert!(ok128 && ok512);
    assert_eq!(set128.len(), 5);
    assert_eq!(set128, set512);
}

#[test]
fn selftest_names_the_corrupted_table() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("zeros.txt");
    let corrupted = VENDORED.replacen("14.134725141734694", "14.6", 1);
    assert_ne!(corrupted, VENDORED);
    std::fs::write(&p, corrupted).unwrap();
    let o = run(&["selftest", "--zeros", p.to_str().unwrap()]);
    assert!(!o.status.success());
    let text = stdout(&o);
    assert!(text.contains("FAIL lambda1-zero-sum"), "{text}");
    assert!(text.contains("PASS lambda1-arithmetic"));

    std::fs::write(&p, "not a number\n").unwrap();
    let o = run(&["selftest", "--zeros", p.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(stdout(&o).contains("FAIL lambda1-zero-sum"));
}

fn li_to(path: &Path, format: &str) {
    let o = run(&[
        "li", "--preset", "dirichlet-chi4", "--n", "1..12", "--format", format, "--out", path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
}

#[test]
fn output_is_byte_identical_on_repeat() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    li_to(&a, "csv");
    li_to(&b, "csv");
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn structured_output() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("out.json");
    li_to(&p, "structured");
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&p).unwrap()).unwrap();
    assert_eq!(v["command"], "li");
    assert_eq!(v["rows"].as_array().unwrap().len(), 12);
    assert_eq!(v["rows"][0]["zero_sum"], serde_json::Value::Null);
    assert!(v["rows"][0]["arithmetic"].is_string());
}
