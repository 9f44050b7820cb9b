use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::NamedTempFile;

fn palred(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_palred")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_json(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

const PUMPED: &str = r#"{"kind": "pumped", "parameters": {"blocks": ["cccc", "d"], "u": "ab",
  "exponents": {"morphic_driven": {"images": ["01", "10"], "seed": "0", "offset": 5}}}}"#;

#[test]
fn pl_of_small_words() {
    for (w, pl) in [("abaab", "2"), ("aba", "1"), ("abcab", "5"), ("a", "1")] {
        let o = palred(&["pl", "--word", w]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert_eq!(stdout(&o).trim(), pl, "{w}");
    }
}

#[test]
fn pl_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_palred"))
        .args(["pl", "--oracle"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"abaab\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn thue_morse_profile_csv() {
    let spec = temp_json(r#"{"kind": "morphic", "parameters": {"images": ["ab", "ba"], "seed": "a"}, "alphabet": "ab"}"#);
    let o = palred(&["pl", "--spec", path(&spec), "-n", "64", "--profile", "--format", "csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 65);
    assert_eq!(lines[0], "n,pl");
    // abba is a palindrome, abbab is not
    assert_eq!(lines[4], "4,1");
    assert_eq!(lines[5], "5,2");
    let oracle = palred(&["pl", "--spec", path(&spec), "-n", "64", "--profile", "--format", "csv", "--oracle"]);
    assert_eq!(stdout(&oracle), out);
}

#[test]
fn json_envelope_is_reproducible() {
    let a = palred(&["pl", "--word", "abaab", "--format", "json"]);
    let b = palred(&["pl", "--word", "abaab", "--format", "json"]);
    let va: Value = serde_json::from_slice(&a.stdout).unwrap();
    let vb: Value = serde_json::from_slice(&b.stdout).unwrap();
    for key in ["command", "fingerprint", "input", "checks", "timings", "result"] {
        assert!(va.get(key).is_some(), "missing {key}");
    }
    assert_eq!(va["command"], "pl");
    assert_eq!(va["result"]["pl"], 2);
    assert_eq!(va["fingerprint"], vb["fingerprint"]);
    let c = palred(&["pl", "--word", "abaaa", "--format", "json"]);
    let vc: Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_ne!(va["fingerprint"], vc["fingerprint"]);
}

#[test]
fn reduce_pumped_word_passes_its_checks() {
    let spec = temp_json(PUMPED);
    let o = palred(&["reduce", "--spec", path(&spec), "-u", "ab", "--horizon", "4000"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let reduced = stdout(&o);
    assert!(!reduced.trim().is_empty());
    assert!(!reduced.contains("ababababab"), "a 5-power of ab survived");
    assert!(reduced.contains("cccc"));

    let o = palred(&["reduce", "--spec", path(&spec), "-u", "ab", "--horizon", "4000", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] == "pass"), "{checks:?}");
    assert_eq!(v["result"]["report"]["gamma"], 3);
}

#[test]
fn reduce_with_explicit_table() {
    let spec = temp_json(PUMPED);
    let table = temp_json(r#"[[{"num": 2, "den": 2}, {"num": 2, "den": 2}], [{"num": 4, "den": 2}, {"num": 4, "den": 2}]]"#);
    let o = palred(&[
        "reduce", "--spec", path(&spec), "-u", "ab", "--horizon", "2000", "--policy", "table", "--table", path(&table),
        "--format", "json",
    ]);
    assert!(o.status.code() != Some(2), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["result"]["report"]["policy_name"].is_string());
}

#[test]
fn reduce_rejects_source_without_recurrence() {
    let spec = temp_json(r#"{"kind": "ultimately_periodic", "parameters": {"preperiod": "ababab", "period": "cd"}}"#);
    let o = palred(&["reduce", "--spec", path(&spec), "-u", "ab", "--horizon", "500"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("recurrence"), "{}", stderr(&o));
}

#[test]
fn reduce_table_policy_needs_a_table() {
    let spec = temp_json(PUMPED);
    let o = palred(&["reduce", "--spec", path(&spec), "-u", "ab", "--policy", "table"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_known_and_unknown_suites() {
    let o = palred(&["verify", "L17", "--seed", "7", "--cases", "200", "--exhaustive-len", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("L17 pass"));

    let o = palred(&["verify", "t24", "--cases", "20", "--report-max-ratio"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("max ratio"));

    let o = palred(&["verify", "X99"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("L6") && err.contains("T24"), "{err}");
}

#[test]
fn verify_json_lists_one_check() {
    let o = palred(&["verify", "P8", "--cases", "50", "--exhaustive-len", "6", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["checks"][0]["id"], "P8");
    assert_eq!(v["checks"][0]["status"], "pass");
}

#[test]
fn bench_prints_both_engines() {
    let o = palred(&["bench", "--sizes", "500,3000", "--oracle-cap", "1000"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "size,engine,wall_ms,peak_mem_bytes,ratio");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("500,online,"));
    assert!(lines[2].starts_with("500,oracle,"));
    assert!(lines[3].starts_with("3000,online,"));
}

#[test]
fn shipped_specs_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../specs");
    for entry in std::fs::read_dir(dir).unwrap() {
        let p = entry.unwrap().path();
        let o = palred(&["pl", "--spec", p.to_str().unwrap(), "-n", "200"]);
        assert!(o.status.success(), "{}: {}", p.display(), stderr(&o));
    }
}
