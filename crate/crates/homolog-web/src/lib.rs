//! Browser bindings. Every entry point takes plain strings and returns a JSON
//! string; failures come back as `{"error": "..."}`.

use homolog::corpus::{builtin, parse_corpus, Corpus};
use homolog::resolution::Budget;
use homolog::summary::{compute, parse_sequence, sequence_json, ComputeRequest};
use homolog::Error;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Keeps a browser tab responsive; the CLI default is 2^24.
const WEB_BUDGET: u64 = 1 << 22;

fn respond(r: homolog::Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn corpus_from(text: &str) -> homolog::Result<Corpus> {
    if text.trim().is_empty() {
        return builtin("paper-examples").ok_or_else(|| Error::Corpus("missing built-in corpus".into()));
    }
    parse_corpus("browser", text)
}

fn run(text: &str, ring: &str, req: ComputeRequest) -> homolog::Result<Value> {
    let corpus = corpus_from(text)?;
    let inst = corpus.instances.iter().find(|i| i.id() == ring).ok_or_else(|| Error::Corpus(format!("no ring {ring}")))?;
    compute(&inst.build()?, &req, &Budget::new(WEB_BUDGET))
}

/// The built-in corpus as editable text.
#[wasm_bindgen]
pub fn builtin_corpus() -> String {
    builtin("paper-examples").map(|c| c.to_text()).unwrap_or_default()
}

/// Ring ids and module names of a corpus.
#[wasm_bindgen]
pub fn corpus_index(text: &str) -> String {
    respond(corpus_from(text).map(|c| {
        let rings: Vec<Value> = c
            .instances
            .iter()
            .map(|i| {
                let mut mods = vec!["k".to_string(), "R".to_string()];
                mods.extend(i.modules.iter().map(|m| m.name.clone()).filter(|n| n != "k" && n != "R"));
                json!({ "ring": i.id(), "modules": mods, "labels": i.labels() })
            })
            .collect();
        json!({ "rings": rings })
    }))
}

/// Length, μ, type and friends for one module, plus ring invariants.
#[wasm_bindgen]
pub fn module_invariants(corpus: &str, ring: &str, module: &str) -> String {
    respond(run(corpus, ring, ComputeRequest { module: module.into(), ..Default::default() }))
}

/// Betti and Bass numbers up to `depth` with their asymptotics.
#[wasm_bindgen]
pub fn betti(corpus: &str, ring: &str, module: &str, depth: usize) -> String {
    let req = ComputeRequest { module: module.into(), depth, betti: true, bass: true, pair: None };
    respond(run(corpus, ring, req))
}

/// Complexity and curvature of a pasted sequence (whitespace or commas between entries).
#[wasm_bindgen]
pub fn analyze(sequence: &str) -> String {
    let lines = sequence.replace([',', ' ', '\t'], "\n");
    respond(parse_sequence(&lines).and_then(|v| match v.len() {
        0..=3 => Err(Error::TooShort(v.len())),
        _ => Ok(sequence_json(&v)),
    }))
}
