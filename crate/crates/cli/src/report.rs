//! Run reports: deterministic JSON and a human-readable summary.

use std::fmt::Write as _;
use std::time::Duration;

use serde_json::{json, Value as Json};

use fibrant::reductions::Windows;

pub const SCHEMA: &str = "fibrant-report/1";

#[derive(Clone, Debug)]
pub struct Check {
    pub key: String,
    pub expected: Json,
    pub actual: Option<Json>,
    pub pass: bool,
    pub claim: Option<String>,
}

#[derive(Clone, Debug)]
pub struct TaskOutcome {
    pub index: usize,
    /// Canonical task text without expectations.
    pub task: String,
    pub result: Option<Json>,
    pub checks: Vec<Check>,
    pub error: Option<String>,
    pub resource_error: bool,
    /// Wall time; shown in text output only so that JSON stays reproducible.
    pub elapsed: Duration,
}

impl TaskOutcome {
    pub fn status(&self) -> &'static str {
        if self.resource_error {
            "RESOURCE_LIMIT"
        } else if self.error.is_some() {
            "ERROR"
        } else if self.checks.iter().any(|c| !c.pass) {
            "FAIL"
        } else if self.checks.is_empty() {
            "DONE"
        } else {
            "PASS"
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub field: String,
    pub nmax: usize,
    pub windows: Windows,
    pub warnings: Vec<String>,
    pub tasks: Vec<TaskOutcome>,
}

impl Report {
    pub fn new(field: String, nmax: usize, windows: Windows) -> Self {
        Report { field, nmax, windows, warnings: Vec::new(), tasks: Vec::new() }
    }

    pub fn failed_checks(&self) -> usize {
        self.tasks.iter().flat_map(|t| &t.checks).filter(|c| !c.pass).count()
    }

    pub fn errors(&self) -> usize {
        self.tasks.iter().filter(|t| t.error.is_some()).count()
    }

    pub fn resource_limited(&self) -> bool {
        self.tasks.iter().any(|t| t.resource_error)
    }

    /// 0 when every task ran and every check passed, 2 when a resource
    /// limit was hit, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.resource_limited() {
            2
        } else if self.errors() > 0 || self.failed_checks() > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Json {
        let checks: usize = self.tasks.iter().map(|t| t.checks.len()).sum();
        json!({
            "schema": SCHEMA,
            "version": env!("CARGO_PKG_VERSION"),
            "field": self.field,
            "seed": self.windows.seed,
            "nmax": self.nmax,
            "windows": self.windows,
            "warnings": self.warnings,
            "tasks": self.tasks.iter().map(|t| json!({
                "index": t.index,
                "task": t.task,
                "status": t.status(),
                "result": t.result,
                "error": t.error,
                "checks": t.checks.iter().map(|c| json!({
                    "key": c.key,
                    "expected": c.expected,
                    "actual": c.actual,
                    "pass": c.pass,
                    "claim": c.claim,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "summary": {
                "tasks": self.tasks.len(),
                "checks": checks,
                "failed_checks": self.failed_checks(),
                "errors": self.errors(),
                "exit_code": self.exit_code(),
            },
        })
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "field {}  nmax {}  seed {}", self.field, self.nmax, self.windows.seed);
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        for t in &self.tasks {
            let _ = writeln!(s, "[{:>2}] {:<14} {}  ({:.2?})", t.index, t.status(), t.task, t.elapsed);
            if let Some(v) = t.result.as_ref().and_then(|r| r.get("value")) {
                let _ = writeln!(s, "     value: {v}");
            }
            if let Some(e) = &t.error {
                let _ = writeln!(s, "     error: {e}");
            }
            for c in &t.checks {
                let actual = c.actual.as_ref().map_or("missing".to_string(), |a| a.to_string());
                let mark = if c.pass { "ok" } else { "MISMATCH" };
                let _ = write!(s, "     {mark} {} expected {} got {}", c.key, c.expected, actual);
                if let Some(claim) = &c.claim {
                    let _ = write!(s, "  [{claim}]");
                }
                let _ = writeln!(s);
            }
        }
        let _ = writeln!(
            s,
            "{} tasks, {} failed checks, {} errors",
            self.tasks.len(),
            self.failed_checks(),
            self.errors()
        );
        s
    }
}
