//! Machine-readable verification reports.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// One named comparison of an expected and an actual value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub tolerance: Option<f64>,
    pub pass: bool,
}

impl Check {
    /// `|actual − expected| ≤ tol`.
    pub fn approx(name: impl Into<String>, expected: f64, actual: f64, tol: f64) -> Check {
        Check {
            name: name.into(),
            expected: number(expected),
            actual: number(actual),
            tolerance: Some(tol),
            pass: (actual - expected).abs() <= tol,
        }
    }

    /// `actual ≤ bound + tol`.
    pub fn at_most(name: impl Into<String>, bound: f64, actual: f64, tol: f64) -> Check {
        Check {
            name: name.into(),
            expected: number(bound),
            actual: number(actual),
            tolerance: Some(tol),
            pass: actual <= bound + tol,
        }
    }

    /// Exact equality of serializable values.
    pub fn exact<T: Serialize + PartialEq>(name: impl Into<String>, expected: T, actual: T) -> Check {
        let pass = expected == actual;
        Check {
            name: name.into(),
            expected: to_value(&expected),
            actual: to_value(&actual),
            tolerance: None,
            pass,
        }
    }

    /// A reported value with nothing to compare against.
    pub fn info<T: Serialize>(name: impl Into<String>, actual: T) -> Check {
        Check {
            name: name.into(),
            expected: Value::Null,
            actual: to_value(&actual),
            tolerance: None,
            pass: true,
        }
    }

    /// A check with an arbitrary verdict.
    pub fn custom<E: Serialize, A: Serialize>(
        name: impl Into<String>,
        expected: E,
        actual: A,
        tolerance: Option<f64>,
        pass: bool,
    ) -> Check {
        Check {
            name: name.into(),
            expected: to_value(&expected),
            actual: to_value(&actual),
            tolerance,
            pass,
        }
    }
}

fn number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or_else(|| Value::String(x.to_string()), Value::Number)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub config: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub elapsed_ms: f64,
}

impl Report {
    pub fn new(command: impl Into<String>, config: BTreeMap<String, Value>) -> Report {
        Report {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            checks: Vec::new(),
            elapsed_ms: 0.0,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per check: `name,expected,actual,tolerance,pass`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["name", "expected", "actual", "tolerance", "pass"])
            .expect("in-memory write");
        for c in &self.checks {
            let tol = c.tolerance.map(|t| t.to_string()).unwrap_or_default();
            w.write_record([
                c.name.as_str(),
                &cell(&c.expected),
                &cell(&c.actual),
                &tol,
                if c.pass { "true" } else { "false" },
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
