//! Report assembly and JSON emission.

use std::time::Instant;

use leibrack::check::{CheckReport, CheckResult, Counterexample};
use serde_json::{json, Map, Value};

/// One check together with where it came from.
#[derive(Clone, Debug)]
pub struct Entry {
    pub group: String,
    pub subject: String,
    pub result: CheckResult,
    pub wall_time_ms: Option<f64>,
}

/// Checks and data collected by a battery, in execution order.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub entries: Vec<Entry>,
    pub data: Map<String, Value>,
    timings: bool,
}

impl Report {
    pub fn new(timings: bool) -> Self {
        Report {
            entries: Vec::new(),
            data: Map::new(),
            timings,
        }
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.result.passed())
    }

    /// Runs `f` and records every check it returns under `group/subject`.
    pub fn run(&mut self, group: &str, subject: &str, f: impl FnOnce() -> CheckReport) {
        let start = Instant::now();
        let report = f();
        let elapsed = start.elapsed().as_secs_f64() * 1000.0;
        for result in report.checks {
            self.entries.push(Entry {
                group: group.to_string(),
                subject: subject.to_string(),
                result,
                wall_time_ms: self.timings.then_some(elapsed),
            });
        }
    }

    pub fn run_one(&mut self, group: &str, subject: &str, f: impl FnOnce() -> CheckResult) {
        self.run(group, subject, || CheckReport { checks: vec![f()] });
    }

    /// Records a check that could not be evaluated.
    pub fn error(&mut self, group: &str, subject: &str, name: &str, message: String) {
        let mut result = CheckResult::new(name);
        result.record(false, || Counterexample {
            tuple: vec![],
            lhs: message,
            rhs: "evaluation failed".into(),
        });
        self.entries.push(Entry {
            group: group.to_string(),
            subject: subject.to_string(),
            result,
            wall_time_ms: None,
        });
    }

    /// Stores `value` under `data/subject/key`.
    pub fn put(&mut self, subject: &str, key: &str, value: Value) {
        let slot = self
            .data
            .entry(subject.to_string())
            .or_insert_with(|| Value::Object(Map::new()));
        if let Value::Object(m) = slot {
            m.insert(key.to_string(), value);
        }
    }

    /// The full document; keys are emitted in sorted order.
    pub fn to_json(&self, command: &str, config: Value) -> Value {
        let failed = self.entries.iter().filter(|e| !e.result.passed()).count();
        let checks: Vec<Value> = self.entries.iter().map(entry_json).collect();
        let warning = if self.entries.is_empty() {
            Value::String("empty battery: no checks were run".into())
        } else {
            Value::Null
        };
        json!({
            "command": command,
            "config": config,
            "status": status(self.passed()),
            "warning": warning,
            "summary": {
                "checks": self.entries.len(),
                "passed": self.entries.len() - failed,
                "failed": failed,
            },
            "checks": checks,
            "data": Value::Object(self.data.clone()),
        })
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

pub fn counterexample_json(c: &Counterexample) -> Value {
    json!({"tuple": c.tuple, "lhs": c.lhs, "rhs": c.rhs})
}

fn entry_json(e: &Entry) -> Value {
    json!({
        "group": e.group,
        "subject": e.subject,
        "name": e.result.name,
        "status": status(e.result.passed()),
        "instances": e.result.instances,
        "failures": e.result.failures,
        "counterexample": e.result.first().map(counterexample_json),
        "wall_time_ms": e.wall_time_ms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_battery_passes_with_warning() {
        let doc = Report::new(false).to_json("report", Value::Null);
        assert_eq!(doc["status"], "pass");
        assert!(doc["warning"].is_string());
        assert_eq!(doc["summary"]["checks"], 0);
    }

    #[test]
    fn single_failure_fails_root() {
        let mut r = Report::new(false);
        r.run_one("g", "s", || CheckResult::new("ok"));
        r.run_one("g", "s", || {
            let mut c = CheckResult::new("bad");
            c.record(false, || {
                leibrack::check::witness(vec!["x".into()], "1".into(), "2".into())
            });
            c
        });
        let doc = r.to_json("report", Value::Null);
        assert_eq!(doc["status"], "fail");
        assert!(doc["warning"].is_null());
        assert_eq!(doc["checks"][1]["counterexample"]["tuple"][0], "x");
        assert!(doc["checks"][0]["counterexample"].is_null());
        assert!(doc["checks"][0]["wall_time_ms"].is_null());
    }
}
