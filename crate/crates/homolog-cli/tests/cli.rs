use std::path::Path;
use std::process::{Command, Output};

use homolog::corpus::{paper_examples, Corpus};
use serde_json::Value;

fn homolog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homolog")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Writes the named built-in instances to a corpus file.
fn subset(dir: &Path, ids: &[&str]) -> String {
    let all = paper_examples();
    let instances = all.instances.into_iter().filter(|i| ids.contains(&i.id())).collect();
    let path = dir.join("subset.toml");
    std::fs::write(&path, Corpus { name: "subset".into(), instances }.to_text()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn builtin_corpus_round_trips_through_a_file() {
    let o = homolog(&["corpus", "builtin", "paper-examples"]);
    assert!(o.status.success());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.toml");
    std::fs::write(&path, stdout(&o)).unwrap();
    let o = homolog(&["compute", "--corpus", path.to_str().unwrap(), "--ring", "xsq-ysq-b2", "--depth", "8"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let want: Vec<u64> = (0..=8).map(|n| (1 << (n + 1)) - 1).collect();
    assert_eq!(v["betti"]["values"], serde_json::json!(want));
    assert_eq!(v["betti"]["analysis"]["curv"], "2");
    assert_eq!(v["betti"]["analysis"]["cx"], "inf");
}

#[test]
fn compute_bass_and_pairs() {
    let o = homolog(&["compute", "--corpus", "builtin:paper-examples", "--ring", "msq-b2", "--module", "E", "--bass", "--pairs", "k,E", "--depth", "4"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bass"]["values"], serde_json::json!([1, 0, 0, 0, 0]));
    assert!(v.get("betti").is_none());
    assert_eq!(v["invariants"]["length"], 3);
    assert_eq!(v["pair"]["sequences"]["ext_len"][0], 1);
}

#[test]
fn check_all_pass_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = subset(dir.path(), &["hyp-x2", "ci-x2y2"]);
    let report = dir.path().join("out.json");
    let args = ["check", "--corpus", &corpus, "--catalog", "THM-4-3,LEM-5-1(1)", "--depth", "5", "--report", report.to_str().unwrap()];
    let o = homolog(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&report).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["counts"]["fail"], 0);
    let results = v["results"].as_array().unwrap();
    assert!(results.iter().any(|r| r["check"] == "LEM-5-1(1)" && r["instance"] == "ci-x2y2"));
    assert!(results.iter().all(|r| r["status"] == "pass"));
    assert!(v["results"][0]["ms"].is_null());

    // identical input, identical bytes
    homolog(&args);
    assert_eq!(std::fs::read_to_string(&report).unwrap(), text);
}

#[test]
fn estimator_only_conclusion_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = subset(dir.path(), &["cube-zero-1"]);
    // five terms are too few for an exact recurrence
    let o = homolog(&["check", "--corpus", &corpus, "--catalog", "COR-6-5(4)", "--depth", "4", "--asym-depth", "4", "--format", "text"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("inconclusive: estimator"));
}

#[test]
fn csv_format() {
    let o = homolog(&["check", "--corpus", "builtin:paper-examples", "--catalog", "THM-4-3", "--depth", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("instance,check,status,n,lhs,rhs,note\n"));
}

#[test]
fn analyze_seq_reads_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seq.txt");
    std::fs::write(&path, "1\n2\n3\n4\n5\n6\n7\n8\n").unwrap();
    let o = homolog(&["analyze-seq", path.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["analysis"]["cx"], "2");
    assert_eq!(v["analysis"]["curv"], "1");
    assert_eq!(v["analysis"]["exact"], true);
}

#[test]
fn errors_exit_three() {
    let o = homolog(&["check", "--corpus", "builtin:paper-examples", "--catalog", "NOPE-1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown check"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "[ring]\nname = \"A\"\nchar = 2\nvars = [\"x\", \"y\"]\nideal = [\"x\"]\nlabels = { ci = false, codim = 1, gorenstein = false }\n")
        .unwrap();
    let o = homolog(&["compute", "--corpus", bad.to_str().unwrap(), "--ring", "A"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not primary"));

    assert_eq!(homolog(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(homolog(&["--help"]).status.code(), Some(0));
}
