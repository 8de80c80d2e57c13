use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cyclinalg::CycMatrix;
use crate::cyclotomic::CycNum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub status: Status,
    #[serde(default)]
    pub witness: Value,
    #[serde(default)]
    pub elapsed_us: u64,
}

/// Ordered list of named checks. Serializes as a JSON array.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

#[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))]
fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let start = std::time::Instant::now();
    let out = f();
    (out, start.elapsed().as_micros() as u64)
}

/// No clock on bare wasm; timings read as zero.
#[cfg(all(target_arch = "wasm32", target_os = "unknown"))]
fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    (f(), 0)
}

/// `Ok` carries informational data for a pass, `Err` the failure witness.
pub type Outcome = Result<Value, Value>;

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Runs `f`, timing it, and records the result under `name`.
    pub(crate) fn run(&mut self, name: &str, f: impl FnOnce() -> Outcome) -> Status {
        let (outcome, elapsed_us) = timed(f);
        let (status, witness) = match outcome {
            Ok(w) => (Status::Pass, w),
            Err(w) => (Status::Fail, w),
        };
        self.checks.push(CheckResult { check: name.to_string(), status, witness, elapsed_us });
        status
    }

    pub(crate) fn skip(&mut self, name: &str, reason: &str) {
        self.checks.push(CheckResult {
            check: name.to_string(),
            status: Status::Skipped,
            witness: json!({ "reason": reason }),
            elapsed_us: 0,
        });
    }

    pub fn push(&mut self, result: CheckResult) {
        self.checks.push(result);
    }

    /// Appends another report, prefixing its check names.
    pub fn extend_prefixed(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.check = format!("{prefix}{}", c.check);
            self.checks.push(c);
        }
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check == name)
    }

    pub fn status(&self, name: &str) -> Option<Status> {
        self.get(name).map(|c| c.status)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// True when every check that ran passed.
    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }

    /// Check names with their statuses, without witnesses or timings.
    pub fn outcomes(&self) -> Vec<(String, Status)> {
        self.checks.iter().map(|c| (c.check.clone(), c.status)).collect()
    }

    pub fn render_pretty(&self) -> String {
        let width = self.checks.iter().map(|c| c.check.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let pad = width - c.check.chars().count();
            let _ = write!(out, "{tag}  {}{}  {:>8}us", c.check, " ".repeat(pad), c.elapsed_us);
            if (c.status != Status::Pass || c.witness.get("class").is_some())
                && !c.witness.is_null() {
                    let _ = write!(out, "  {}", c.witness);
                }
            out.push('\n');
        }
        let failed = self.failures().count();
        let skipped = self.checks.iter().filter(|c| c.status == Status::Skipped).count();
        let _ = writeln!(out, "{} checks, {} failed, {} skipped", self.checks.len(), failed, skipped);
        out
    }
}

pub(crate) fn num(x: &CycNum) -> Value {
    json!({ "text": x.to_string(), "exact": x })
}

pub(crate) fn entry(labels: &[String], i: usize, j: usize, lhs: &CycNum, rhs: &CycNum) -> Value {
    json!({
        "row": labels[i],
        "col": labels[j],
        "lhs": num(lhs),
        "rhs": num(rhs),
    })
}

/// Compares two matrices exactly, returning a witness at the first
/// differing entry.
pub(crate) fn compare(labels: &[String], lhs: &CycMatrix, rhs: &CycMatrix) -> Outcome {
    match lhs.first_difference(rhs) {
        None => Ok(Value::Null),
        Some((i, j)) if lhs.shape() == rhs.shape() => Err(entry(labels, i, j, lhs.get(i, j), rhs.get(i, j))),
        Some(_) => Err(json!({ "shape": [lhs.shape(), rhs.shape()] })),
    }
}

pub(crate) fn labels_at(labels: &[String], idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| labels[i].clone()).collect()
}
