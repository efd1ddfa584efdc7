use std::collections::BTreeMap;
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub expected: String,
    pub observed: String,
}

impl Check {
    pub fn new(id: &str, ok: bool, expected: impl ToString, observed: impl ToString) -> Check {
        let status = if ok { Status::Pass } else { Status::Fail };
        Check { id: id.into(), status, expected: expected.to_string(), observed: observed.to_string() }
    }

    pub fn inconclusive(id: &str, why: impl ToString) -> Check {
        Check { id: id.into(), status: Status::Inconclusive, expected: String::new(), observed: why.to_string() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: u64,
    pub stages_ms: BTreeMap<String, u64>,
}

/// Everything a command emits. Only `timing` may differ between identical runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub scenario: serde_json::Value,
    pub seed: u64,
    pub status: Status,
    pub checks: Vec<Check>,
    pub results: serde_json::Map<String, serde_json::Value>,
    pub certificates: serde_json::Map<String, serde_json::Value>,
    pub timing: Timing,
}

impl Report {
    /// 0 all-pass, 1 any-fail, 2 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with timing cleared, for byte comparisons.
    pub fn body_json(&self) -> String {
        let mut r = self.clone();
        r.timing = Timing::default();
        r.to_json()
    }

    /// One row per check, then one row per scalar result.
    pub fn to_csv(&self) -> String {
        let esc = |s: &str| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        let mut out = String::from("kind,id,status,expected,observed\n");
        for c in &self.checks {
            let st = serde_json::to_value(c.status).unwrap();
            out += &format!("check,{},{},{},{}\n", esc(&c.id), st.as_str().unwrap(), esc(&c.expected), esc(&c.observed));
        }
        for (k, v) in &self.results {
            let s = match v {
                serde_json::Value::Number(n) => n.to_string(),
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Bool(b) => b.to_string(),
                _ => continue,
            };
            out += &format!("result,{},,,{}\n", esc(k), esc(&s));
        }
        out
    }
}

/// Collects checks, results and stage timings while a command runs.
pub struct ReportBuilder {
    command: String,
    scenario: serde_json::Value,
    seed: u64,
    checks: Vec<Check>,
    results: serde_json::Map<String, serde_json::Value>,
    certificates: serde_json::Map<String, serde_json::Value>,
    timing: Timing,
    start: Instant,
}

impl ReportBuilder {
    pub fn new(command: &str, scenario: impl Serialize, seed: u64) -> ReportBuilder {
        ReportBuilder {
            command: command.into(),
            scenario: serde_json::to_value(scenario).expect("scenario serializes"),
            seed,
            checks: vec![],
            results: Default::default(),
            certificates: Default::default(),
            timing: Timing::default(),
            start: Instant::now(),
        }
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn result(&mut self, key: &str, v: impl Serialize) {
        self.results.insert(key.into(), serde_json::to_value(v).expect("result serializes"));
    }

    pub fn certificate(&mut self, key: &str, v: impl Serialize) {
        self.certificates.insert(key.into(), serde_json::to_value(v).expect("certificate serializes"));
    }

    /// Runs a stage. Budget exhaustion becomes an inconclusive check; other errors propagate.
    pub fn stage<T>(&mut self, name: &str, f: impl FnOnce(&mut Self) -> Result<T>) -> Result<Option<T>> {
        let t = Instant::now();
        let out = f(self);
        self.timing.stages_ms.insert(name.into(), t.elapsed().as_millis() as u64);
        match out {
            Ok(v) => Ok(Some(v)),
            Err(Error::BudgetExceeded(m)) => {
                self.check(Check::inconclusive(name, format!("budget exceeded: {m}")));
                Ok(None)
            }
            Err(e @ Error::InternalConsistency(_)) => {
                self.check(Check::new(name, false, "consistent", e));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    pub fn finish(mut self) -> Report {
        self.timing.total_ms = self.start.elapsed().as_millis() as u64;
        let status = if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        Report {
            schema_version: SCHEMA_VERSION,
            command: self.command,
            scenario: self.scenario,
            seed: self.seed,
            status,
            checks: self.checks,
            results: self.results,
            certificates: self.certificates,
            timing: self.timing,
        }
    }
}

/// Per-module seed derived from the root seed; one ChaCha stream per tag.
pub fn split_seed(root: u64, stream: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(root);
    rng.set_stream(stream);
    rng.next_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_and_exit_codes() {
        let mut b = ReportBuilder::new("x", serde_json::json!({}), 1);
        b.check(Check::new("a", true, 1, 1));
        assert_eq!(b.finish().exit_code(), 0);
        let mut b = ReportBuilder::new("x", serde_json::json!({}), 1);
        b.check(Check::new("a", true, 1, 1));
        b.stage("s", |_| -> Result<()> { Err(Error::BudgetExceeded("n".into())) }).unwrap();
        let r = b.finish();
        assert_eq!(r.exit_code(), 2);
        assert!(r.to_csv().contains("check,s,inconclusive"));
        let mut b = ReportBuilder::new("x", serde_json::json!({}), 1);
        b.check(Check::new("a", false, 1, 2));
        b.check(Check::inconclusive("b", ""));
        assert_eq!(b.finish().exit_code(), 1);
        assert_ne!(split_seed(1, 0), split_seed(1, 1));
        assert_eq!(split_seed(7, 3), split_seed(7, 3));
    }
}
