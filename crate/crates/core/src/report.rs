//! Outcome of an axiom check, with counterexample witnesses.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactlin::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// A failing instance: which identity, at which basis tuple, and both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub context: String,
    pub tuple: Vec<usize>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub status: Status,
    pub checks_run: u64,
    pub skipped_undefined: u64,
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Default for CheckReport {
    fn default() -> Self {
        CheckReport::new()
    }
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport { status: Status::Pass, checks_run: 0, skipped_undefined: 0, witnesses: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn record_pass(&mut self) {
        self.checks_run += 1;
    }

    pub fn record_passes(&mut self, n: u64) {
        self.checks_run += n;
    }

    pub fn record_skips(&mut self, n: u64) {
        self.skipped_undefined += n;
    }

    pub fn record_skip(&mut self) {
        self.skipped_undefined += 1;
    }

    /// A further failure of an identity that already has a witness.
    pub fn record_repeat_fail(&mut self) {
        self.checks_run += 1;
        self.status = Status::Fail;
    }

    pub fn record_fail(&mut self, w: Witness) {
        self.checks_run += 1;
        self.status = Status::Fail;
        self.witnesses.push(w);
    }

    /// Compares two vectors and records the outcome.
    pub fn compare(&mut self, context: impl FnOnce() -> String, tuple: &[usize], lhs: &[Scalar], rhs: &[Scalar]) -> bool {
        if lhs == rhs {
            self.record_pass();
            true
        } else {
            self.record_fail(Witness { context: context(), tuple: tuple.to_vec(), lhs: lhs.to_vec(), rhs: rhs.to_vec() });
            false
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checks_run += other.checks_run;
        self.skipped_undefined += other.skipped_undefined;
        if other.status == Status::Fail {
            self.status = Status::Fail;
        }
        self.witnesses.extend(other.witnesses);
        self.notes.extend(other.notes);
    }

    /// Merges `other`, prefixing its witness contexts.
    pub fn merge_prefixed(&mut self, prefix: &str, mut other: CheckReport) {
        for w in &mut other.witnesses {
            w.context = format!("{prefix}: {}", w.context);
        }
        self.merge(other);
    }

    pub fn failing(context: impl Into<String>) -> Self {
        let mut r = CheckReport::new();
        r.record_fail(Witness { context: context.into(), tuple: vec![], lhs: vec![], rhs: vec![] });
        r
    }
}

fn fmt_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(f, "{status}: {} checks", self.checks_run)?;
        if self.skipped_undefined > 0 {
            write!(f, ", {} skipped (undefined)", self.skipped_undefined)?;
        }
        writeln!(f)?;
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        for w in &self.witnesses {
            writeln!(f, "  witness {} at {:?}", w.context, w.tuple)?;
            if !w.lhs.is_empty() || !w.rhs.is_empty() {
                writeln!(f, "    lhs = {}", fmt_vec(&w.lhs))?;
                writeln!(f, "    rhs = {}", fmt_vec(&w.rhs))?;
            }
        }
        Ok(())
    }
}
