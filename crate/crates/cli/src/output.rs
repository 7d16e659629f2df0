use std::fmt::Write as _;
use std::time::Duration;

use cosimplex::report::{VerifyReport, Witness};
use cosimplex::simplicial::CheckMode;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Everything one invocation reports.
pub struct Outcome {
    pub suite: String,
    pub config: Value,
    pub reports: Vec<VerifyReport>,
    /// Suite-specific results, such as the cohomology table.
    pub data: Option<Value>,
    /// Extra lines for the text summary.
    pub lines: Vec<String>,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn new(suite: impl Into<String>, config: Value) -> Self {
        Outcome {
            suite: suite.into(),
            config,
            reports: Vec::new(),
            data: None,
            lines: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    /// A run that could not complete: the error becomes the witness.
    pub fn errored(suite: impl Into<String>, config: Value, message: String) -> Self {
        let suite = suite.into();
        let mut r = VerifyReport::new(suite.clone(), CheckMode::Exhaustive);
        r.fail(Witness::new("error", message));
        let mut o = Outcome::new(suite, config);
        o.reports.push(r);
        o
    }

    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed())
    }

    pub fn checked(&self) -> usize {
        self.reports.iter().map(|r| r.checked_count).sum()
    }

    fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn to_json(&self, timings: bool) -> Value {
        let witnesses: Vec<Value> = self
            .reports
            .iter()
            .filter_map(|r| {
                r.witness.as_ref().map(|w| {
                    let mut v = serde_json::to_value(w).expect("witness serializes");
                    v["check"] = json!(r.suite);
                    v
                })
            })
            .collect();
        let mut out = json!({
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "config": self.config,
            "status": self.status(),
            "checked": self.checked(),
            "witnesses": witnesses,
            "reports": self.reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "timings": if timings { json!({ "total_ms": self.elapsed.as_secs_f64() * 1e3 }) } else { json!({}) },
        });
        if let Some(d) = &self.data {
            out["data"] = d.clone();
        }
        out
    }

    pub fn to_text(&self, timings: bool) -> String {
        let mut s = String::new();
        writeln!(s, "{}", self.suite).unwrap();
        for r in &self.reports {
            let mode = match r.mode {
                CheckMode::Exhaustive => "exhaustive".to_string(),
                CheckMode::Sampled { seed } => format!("sampled, seed {seed}"),
            };
            let tag = if r.passed() { "pass" } else { "FAIL" };
            writeln!(s, "  [{tag}] {}: {} checks ({mode})", r.suite, r.checked_count).unwrap();
            if let Some(w) = &r.witness {
                writeln!(s, "         witness: {w}").unwrap();
            }
            for n in &r.notes {
                writeln!(s, "         note: {n}").unwrap();
            }
        }
        for l in &self.lines {
            writeln!(s, "  {l}").unwrap();
        }
        write!(s, "status: {} ({} checks)", self.status().to_uppercase(), self.checked()).unwrap();
        if timings {
            write!(s, " in {:.3}s", self.elapsed.as_secs_f64()).unwrap();
        }
        s.push('\n');
        s
    }
}
