//! JSON summaries shared by the command line and the browser demo.

use serde_json::{json, Value};

use crate::asymptotics::{analyze, AsymptoticsReport};
use crate::corpus::{Built, BuiltInstance};
use crate::field::Field;
use crate::homalg::pair_sequences;
use crate::resolution::{bass_sequence, betti_sequence, Budget};
use crate::{with_built, Error, Result};

impl AsymptoticsReport {
    pub fn to_json(&self) -> Value {
        json!({
            "cx": self.cx.to_string(),
            "curv": self.curv.to_string(),
            "exact": self.is_exact(),
            "recurrence": self.recurrence.as_ref().map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            "diagnostics": self.diagnostics,
        })
    }
}

/// A sequence with its asymptotics; short prefixes get a null analysis.
pub fn sequence_json(values: &[u64]) -> Value {
    let analysis = analyze(values).ok().map(|r| r.to_json());
    json!({ "values": values, "analysis": analysis })
}

/// What to compute for one module.
#[derive(Clone, Debug, Default)]
pub struct ComputeRequest {
    pub module: String,
    pub depth: usize,
    pub betti: bool,
    pub bass: bool,
    pub pair: Option<(String, String)>,
}

fn lookup<'a, F: Field>(b: &'a Built<F>, name: &str) -> Result<&'a crate::module::Module<F>> {
    b.module(name).map(|m| m.as_ref()).ok_or_else(|| Error::Corpus(format!("instance {} has no module {name}", b.id)))
}

fn compute_in<F: Field>(b: &Built<F>, req: &ComputeRequest, budget: &Budget) -> Result<Value> {
    let m = lookup(b, &req.module)?;
    let mut out = json!({
        "instance": b.id,
        "ring": b.ring.invariants(),
        "module": req.module,
        "invariants": m.invariants(),
        "depth": req.depth,
    });
    if req.betti {
        out["betti"] = sequence_json(&betti_sequence(m, req.depth, budget)?);
    }
    if req.bass {
        out["bass"] = sequence_json(&bass_sequence(m, req.depth, budget)?);
    }
    if let Some((x, y)) = &req.pair {
        let seqs = pair_sequences(lookup(b, x)?, lookup(b, y)?, req.depth, budget)?;
        out["pair"] = json!({ "m": x, "n": y, "sequences": seqs });
    }
    Ok(out)
}

pub fn compute(inst: &BuiltInstance, req: &ComputeRequest, budget: &Budget) -> Result<Value> {
    with_built!(inst, b => compute_in(b, req, budget))
}

/// Parses one non-negative integer per line; blank lines and `#` comments are skipped.
pub fn parse_sequence(text: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.split('#').next().unwrap().trim();
        if t.is_empty() {
            continue;
        }
        let v = t.parse::<u64>().map_err(|e| Error::parse(i + 1, 1, format!("`{t}`: {e}")))?;
        out.push(v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builtin;

    #[test]
    fn compute_on_builtin() {
        let c = builtin("paper-examples").unwrap();
        let inst = c.instances.iter().find(|i| i.id() == "ci-x2y2").unwrap().build().unwrap();
        let req = ComputeRequest { module: "k".into(), depth: 6, betti: true, bass: true, pair: Some(("M".into(), "N".into())) };
        let v = compute(&inst, &req, &Budget::default()).unwrap();
        assert_eq!(v["betti"]["values"], json!([1, 2, 3, 4, 5, 6, 7]));
        assert_eq!(v["betti"]["analysis"]["cx"], "2");
        assert_eq!(v["invariants"]["length"], 1);
        assert!(v["pair"]["sequences"]["ext_len"].is_array());
        let bad = ComputeRequest { module: "Z".into(), ..req };
        assert!(compute(&inst, &bad, &Budget::default()).is_err());
    }

    #[test]
    fn sequences_from_text() {
        assert_eq!(parse_sequence("1\n\n2 # two\n3\n").unwrap(), vec![1, 2, 3]);
        assert!(matches!(parse_sequence("1\n-2\n"), Err(Error::Parse { line: 2, .. })));
    }
}
