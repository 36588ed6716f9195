use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::RunConfig;

/// Identifies the layout of [`Report`]; bumped on incompatible changes.
pub const SCHEMA: &str = "commvar-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Partial,
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Partial => "PARTIAL",
            Verdict::Skipped => "SKIPPED",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// What a result is: a verification, a plain computation, or output of a
/// closed-form prediction that nothing here proves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Check,
    Result,
    Conjecture,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub label: Label,
    pub verdict: Verdict,
    pub summary: String,
    #[serde(default)]
    pub data: Value,
    /// Human-readable rendering (tables, polynomials) for text output.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lines: Vec<String>,
}

impl CheckResult {
    pub fn new(id: &str, label: Label, verdict: Verdict, summary: impl Into<String>) -> Self {
        CheckResult {
            id: id.to_string(),
            label,
            verdict,
            summary: summary.into(),
            data: Value::Null,
            lines: Vec::new(),
        }
    }

    pub fn skipped(id: &str, why: impl Into<String>) -> Self {
        CheckResult::new(id, Label::Check, Verdict::Skipped, why)
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = data;
        self
    }

    pub fn with_lines(mut self, lines: Vec<String>) -> Self {
        self.lines = lines;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub name: String,
    pub argv: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckTiming {
    pub id: String,
    pub secs: f64,
}

/// Wall-clock data; the only part of a report that varies between runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Timing {
    pub total_secs: f64,
    pub checks: Vec<CheckTiming>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: CommandEcho,
    pub config: RunConfig,
    pub results: Vec<CheckResult>,
    pub timing: Timing,
}

impl Report {
    pub fn count(&self, v: Verdict) -> usize {
        self.results.iter().filter(|r| r.verdict == v).count()
    }

    pub fn has_failures(&self) -> bool {
        self.count(Verdict::Fail) > 0
    }

    /// 1 when any check failed. `groebner` and `colon` return 3 for a
    /// partial (budget-limited) result; everything else 0.
    pub fn exit_code(&self) -> i32 {
        if self.has_failures() {
            1
        } else if matches!(self.command.name.as_str(), "groebner" | "colon")
            && self.count(Verdict::Partial) > 0
        {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let n = c.n.map(|n| n.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "commvar {}  n={n} field={} order={}",
            self.command.name,
            c.field,
            serde_json::to_value(c.order)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default()
        );
        let width = self.results.iter().map(|r| r.id.len()).max().unwrap_or(0);
        for r in &self.results {
            let tag = match r.label {
                Label::Conjecture => "CONJECTURE",
                _ => r.verdict.as_str(),
            };
            let _ = writeln!(out, "{tag:<10} {:<width$}  {}", r.id, r.summary);
            for line in &r.lines {
                let _ = writeln!(out, "    {line}");
            }
        }
        let _ = writeln!(
            out,
            "{} PASS, {} FAIL, {} PARTIAL, {} SKIPPED in {:.2}s",
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::Partial),
            self.count(Verdict::Skipped),
            self.timing.total_secs
        );
        out
    }
}

/// Collects results and their timings.
pub struct ReportBuilder {
    start: Instant,
    results: Vec<CheckResult>,
    timing: Vec<CheckTiming>,
}

impl Default for ReportBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl ReportBuilder {
    pub fn new() -> Self {
        ReportBuilder {
            start: Instant::now(),
            results: Vec::new(),
            timing: Vec::new(),
        }
    }

    /// Runs `f`, recording its result and wall-clock time.
    pub fn run(&mut self, f: impl FnOnce() -> CheckResult) -> &CheckResult {
        let t = Instant::now();
        let r = f();
        self.timing.push(CheckTiming {
            id: r.id.clone(),
            secs: t.elapsed().as_secs_f64(),
        });
        self.results.push(r);
        self.results.last().expect("just pushed")
    }

    pub fn push(&mut self, r: CheckResult) {
        self.run(|| r);
    }

    pub fn finish(self, name: &str, argv: Vec<String>, config: RunConfig) -> Report {
        Report {
            schema: SCHEMA.to_string(),
            command: CommandEcho {
                name: name.to_string(),
                argv,
            },
            config,
            results: self.results,
            timing: Timing {
                total_secs: self.start.elapsed().as_secs_f64(),
                checks: self.timing,
            },
        }
    }
}
