use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::Level;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Recorded without being asserted.
    Observed,
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    name: String,
    delta: u32,
    scope: String,
    status: Status,
    counts: BTreeMap<String, u64>,
    elapsed_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

impl CheckRecord {
    pub fn new(name: &str, delta: u32, scope: impl Into<String>) -> Self {
        CheckRecord {
            name: name.to_string(),
            delta,
            scope: scope.into(),
            status: Status::Pass,
            counts: BTreeMap::new(),
            elapsed_ms: 0.0,
            witness: None,
            note: None,
        }
    }

    pub fn failed(name: &str, delta: u32, scope: impl Into<String>, witness: String) -> Self {
        let mut rec = CheckRecord::new(name, delta, scope);
        rec.fail(witness);
        rec
    }

    /// Runs `body` and records its wall time.
    pub(crate) fn timed(name: &str, delta: u32, scope: impl Into<String>, body: impl FnOnce(&mut CheckRecord)) -> Self {
        let mut rec = CheckRecord::new(name, delta, scope);
        let start = Instant::now();
        body(&mut rec);
        rec.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        rec
    }

    /// Marks the check failed. The first witness is kept.
    pub fn fail(&mut self, witness: String) {
        self.status = Status::Fail;
        self.witness.get_or_insert(witness);
    }

    /// Marks the check as reported-only, unless it already failed.
    pub fn observe(&mut self, note: String) {
        if self.status != Status::Fail {
            self.status = Status::Observed;
        }
        self.note = Some(note);
    }

    pub fn note(&mut self, note: String) {
        self.note = Some(note);
    }

    pub fn count(&mut self, key: &str, value: u64) {
        self.counts.insert(key.to_string(), value);
    }

    /// Records `got` and fails unless it equals `want`.
    pub fn expect_count(&mut self, key: &str, got: u64, want: u64) {
        self.count(key, got);
        if got != want {
            self.fail(format!("{key} = {got}, expected {want}"));
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn scope(&self) -> &str {
        &self.scope
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn counts(&self) -> &BTreeMap<String, u64> {
        &self.counts
    }

    pub fn get(&self, key: &str) -> Option<u64> {
        self.counts.get(key).copied()
    }

    pub fn elapsed_ms(&self) -> f64 {
        self.elapsed_ms
    }

    pub fn witness(&self) -> Option<&str> {
        self.witness.as_deref()
    }

    pub fn note_text(&self) -> Option<&str> {
        self.note.as_deref()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub delta: u32,
    pub level: Level,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
}

impl VerifyReport {
    pub fn new(delta: u32, level: Level, seed: u64) -> Self {
        VerifyReport { delta, level, seed, checks: Vec::new() }
    }

    pub fn push(&mut self, check: CheckRecord) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = CheckRecord>) {
        self.checks.extend(checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// Fixed-width table, one row per check, witnesses and notes indented below.
    pub fn table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        let mut out = String::new();
        let _ = writeln!(out, "delta {}  level {}  seed {}", self.delta, self.level, self.seed);
        let _ = writeln!(out, "{:<width$}  {:<8}  {:>10}  counts", "check", "status", "ms");
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Observed => "observed",
            };
            let counts: Vec<String> = c.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "{:<width$}  {:<8}  {:>10.1}  {}", c.name, status, c.elapsed_ms, counts.join(" "));
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "{:width$}  witness: {w}", "");
            }
            if let Some(n) = &c.note {
                let _ = writeln!(out, "{:width$}  note: {n}", "");
            }
        }
        let failed = self.failures().count();
        let _ = writeln!(out, "{} checks, {} failed", self.checks.len(), failed);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fail_keeps_first_witness_and_beats_observe() {
        let mut r = CheckRecord::new("x", 3, "all");
        r.fail("first".into());
        r.fail("second".into());
        r.observe("seen".into());
        assert_eq!(r.status(), Status::Fail);
        assert_eq!(r.witness(), Some("first"));
    }

    #[test]
    fn expect_count_fails_with_witness() {
        let mut r = CheckRecord::new("x", 3, "all");
        r.expect_count("blocks", 13, 14);
        assert_eq!(r.status(), Status::Fail);
        assert_eq!(r.witness(), Some("blocks = 13, expected 14"));
    }

    #[test]
    fn report_json_round_trip() {
        let mut rep = VerifyReport::new(3, Level::Full, 7);
        rep.push(CheckRecord::new("a", 3, "all"));
        rep.push(CheckRecord::failed("b", 3, "all", "w".into()));
        assert!(!rep.passed());
        let back: VerifyReport = serde_json::from_str(&rep.to_json().unwrap()).unwrap();
        assert_eq!(back, rep);
        assert!(rep.table().contains("FAIL"));
    }
}
