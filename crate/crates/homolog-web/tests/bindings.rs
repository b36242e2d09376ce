use homolog_web::{analyze, betti, builtin_corpus, corpus_index, module_invariants};
use serde_json::{json, Value};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn betti_on_builtin_corpus() {
    let v = parse(betti("", "ci-x2y2", "k", 6));
    assert_eq!(v["betti"]["values"], json!([1, 2, 3, 4, 5, 6, 7]));
    assert_eq!(v["betti"]["analysis"]["cx"], "2");
    assert_eq!(v["bass"]["values"], v["betti"]["values"]);
}

#[test]
fn betti_on_pasted_corpus() {
    let text = builtin_corpus();
    assert!(text.contains("[ring]"));
    let v = parse(betti(&text, "msq-b2", "k", 5));
    assert_eq!(v["betti"]["values"], json!([1, 2, 4, 8, 16, 32]));
    assert_eq!(v["betti"]["analysis"]["curv"], "2");
}

#[test]
fn invariants_and_index() {
    let v = parse(module_invariants("", "msq-b3", "E"));
    assert_eq!(v["invariants"]["length"], 4);
    assert_eq!(v["invariants"]["mu"], 3);
    assert_eq!(v["invariants"]["type"], 1);
    let idx = parse(corpus_index(""));
    let first = &idx["rings"][0];
    assert_eq!(first["modules"][0], "k");
    assert!(first["labels"]["ci"].is_boolean());
}

#[test]
fn analyze_pasted_sequence() {
    let v = parse(analyze("1, 3, 7, 15, 31, 63"));
    assert_eq!(v["analysis"]["curv"], "2");
    assert_eq!(v["analysis"]["cx"], "inf");
}

#[test]
fn errors_are_json() {
    assert!(parse(analyze("1 2")).get("error").is_some());
    assert!(parse(betti("", "nope", "k", 3))["error"].as_str().unwrap().contains("no ring"));
    assert!(parse(betti("[ring]\nname = 1\n", "A", "k", 3))["error"].as_str().unwrap().contains("line"));
}
