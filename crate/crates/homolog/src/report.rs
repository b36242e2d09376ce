//! Check reports in JSON, CSV and plain text.

use serde::Serialize;

use crate::checks::{CheckResult, Status};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(Error::Io(format!("unknown report format {other}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub corpus: String,
    pub depth: usize,
    pub counts: Counts,
    pub results: Vec<CheckResult>,
}

impl Report {
    /// Sorts results by (instance, check) so output never depends on
    /// execution order.
    pub fn new(corpus: &str, depth: usize, mut results: Vec<CheckResult>) -> Self {
        results.sort_by(|a, b| (&a.instance, &a.check).cmp(&(&b.instance, &b.check)));
        let mut counts = Counts::default();
        for r in &results {
            match r.status {
                Status::Pass => counts.pass += 1,
                Status::Fail => counts.fail += 1,
                Status::Inconclusive => counts.inconclusive += 1,
            }
        }
        Report { version: env!("CARGO_PKG_VERSION").to_string(), corpus: corpus.to_string(), depth, counts, results }
    }

    /// 0 when nothing failed or was left open, 1 on any failure, 2 when the
    /// only blemishes are inconclusive results.
    pub fn exit_code(&self) -> i32 {
        if self.counts.fail > 0 {
            1
        } else if self.counts.inconclusive > 0 {
            2
        } else {
            0
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per evidence row; results without evidence get a single row.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["instance", "check", "status", "n", "lhs", "rhs", "note"]).unwrap();
        let text = |v: &serde_json::Value| match v {
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        for r in &self.results {
            let status = r.status.to_string();
            if r.evidence.is_empty() {
                let note = r.diagnostics.last().cloned().unwrap_or_default();
                w.write_record([&r.instance, &r.check, &status, "", "", "", &note]).unwrap();
            }
            for e in &r.evidence {
                let n = e.n.map(|n| n.to_string()).unwrap_or_default();
                w.write_record([&r.instance, &r.check, &status, &n, &text(&e.lhs), &text(&e.rhs), &e.note]).unwrap();
            }
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&format!("{:<12} {:<20} {}", r.status.to_string(), r.instance, r.check));
            if let Some(ms) = r.ms {
                out.push_str(&format!("  ({ms} ms)"));
            }
            out.push('\n');
            if let Some(e) = &r.counterexample {
                let n = e.n.map(|n| format!("n = {n}: ")).unwrap_or_default();
                out.push_str(&format!("    counterexample {n}{} > {} [{}]\n", e.lhs, e.rhs, e.note));
            }
            if r.status == Status::Inconclusive {
                for d in r.diagnostics.iter().skip(1).take(3) {
                    out.push_str(&format!("    {d}\n"));
                }
            }
        }
        let c = self.counts;
        out.push_str(&format!("{} pass, {} fail, {} inconclusive (corpus {}, depth {})\n", c.pass, c.fail, c.inconclusive, self.corpus, self.depth));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::Evidence;
    use serde_json::Value;

    fn result(check: &str, status: Status) -> CheckResult {
        CheckResult {
            check: check.into(),
            instance: "A".into(),
            depth: 6,
            status,
            evidence: vec![Evidence { n: Some(0), lhs: Value::from(1), rhs: Value::from(2), note: "X=k".into() }],
            ms: None,
            diagnostics: vec!["cases".into(), "inconclusive: estimator (x)".into()],
            counterexample: None,
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Report::new("c", 6, vec![result("A", Status::Pass)]).exit_code(), 0);
        assert_eq!(Report::new("c", 6, vec![result("A", Status::Pass), result("B", Status::Inconclusive)]).exit_code(), 2);
        assert_eq!(Report::new("c", 6, vec![result("A", Status::Fail), result("B", Status::Inconclusive)]).exit_code(), 1);
        assert_eq!(Report::new("c", 6, vec![]).exit_code(), 0);
    }

    #[test]
    fn formats() {
        let r = Report::new("c", 6, vec![result("B", Status::Inconclusive), result("A", Status::Pass)]);
        assert_eq!(r.results[0].check, "A");
        let json: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["results"][0]["evidence"][0]["lhs"], 1);
        assert_eq!(json["counts"]["inconclusive"], 1);
        assert!(r.to_csv().starts_with("instance,check,status,n,lhs,rhs,note\nA,A,pass,0,1,2,X=k\n"));
        assert!(r.to_text().contains("inconclusive: estimator"));
    }
}
