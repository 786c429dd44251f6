//! Command output: text for the terminal, the same content as JSON for `--json`.

use serde::Serialize;

use ennea_core::{CheckReport, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub checks_run: u64,
    pub skipped_undefined: u64,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Free-form output lines (tables, printed systems, summaries).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub output: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            status: Status::Pass,
            checks_run: 0,
            skipped_undefined: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
            output: Vec::new(),
            error: None,
        }
    }

    pub fn error(command: &str, message: String) -> Self {
        Report { status: Status::Error, error: Some(message), ..Report::new(command) }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.output.push(s.into());
    }

    pub fn fail(&mut self) {
        self.status = Status::Fail;
    }

    /// Adds the counts, witnesses and notes of a check; a failing check fails the report.
    pub fn absorb(&mut self, r: CheckReport) {
        self.checks_run += r.checks_run;
        self.skipped_undefined += r.skipped_undefined;
        if !r.passed() {
            self.fail();
        }
        self.witnesses.extend(r.witnesses);
        self.notes.extend(r.notes);
    }

    pub fn absorb_prefixed(&mut self, prefix: &str, mut r: CheckReport) {
        for w in &mut r.witnesses {
            w.context = format!("{prefix}: {}", w.context);
        }
        self.absorb(r);
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.output {
            out.push_str(l);
            out.push('\n');
        }
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        if let Some(e) = &self.error {
            out.push_str(&format!("{status}: {e}\n"));
            return out;
        }
        if self.checks_run == 0 && self.status == Status::Fail {
            out.push_str(&format!("{status}\n"));
        } else if self.checks_run > 0 {
            out.push_str(&format!("{status}: {} checks", self.checks_run));
            if self.skipped_undefined > 0 {
                out.push_str(&format!(", {} skipped (undefined)", self.skipped_undefined));
            }
            out.push('\n');
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        for w in &self.witnesses {
            out.push_str(&format!("  witness {} at {:?}\n", w.context, w.tuple));
            if !w.lhs.is_empty() || !w.rhs.is_empty() {
                let v = |x: &[ennea_core::Scalar]| x.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
                out.push_str(&format!("    lhs = [{}]\n    rhs = [{}]\n", v(&w.lhs), v(&w.rhs)));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
