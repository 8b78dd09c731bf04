//! Check results and reports.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub status: Status,
    /// Why a check was skipped, or a remark on a pass.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Counterexample for a failure.
    #[serde(skip_serializing_if = "Value::is_null")]
    pub witness: Value,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn pass(id: &str) -> Self {
        CheckResult {
            check_id: id.to_string(),
            status: Status::Pass,
            reason: None,
            witness: Value::Null,
            elapsed: Duration::ZERO,
        }
    }

    pub fn fail(id: &str, witness: Value) -> Self {
        CheckResult {
            status: Status::Fail,
            witness: if witness.is_null() { Value::String("no witness".into()) } else { witness },
            ..Self::pass(id)
        }
    }

    pub fn skipped(id: &str, reason: impl Into<String>) -> Self {
        CheckResult {
            status: Status::Skipped,
            reason: Some(reason.into()),
            ..Self::pass(id)
        }
    }

    pub fn with_reason(mut self, reason: impl Into<String>) -> Self {
        self.reason = Some(reason.into());
        self
    }

    fn text_line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let mut line = format!("  {tag} {}", self.check_id);
        if let Some(r) = &self.reason {
            let _ = write!(line, " ({r})");
        }
        if self.status == Status::Fail {
            let _ = write!(line, ": {}", self.witness);
        }
        line
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeDescriptor {
    pub name: String,
    pub size: usize,
    pub hash: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub is_distributive: bool,
    pub is_cd: bool,
    pub homset_size: Option<usize>,
    pub is_girard: Option<bool>,
    pub dualizing_count: Option<usize>,
    pub automorphism_count: Option<usize>,
    pub tight_unital: Option<bool>,
    pub autodual_verdict: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub lattice: LatticeDescriptor,
    pub summary: Summary,
    pub checks: Vec<CheckResult>,
}

fn count(checks: &[CheckResult], status: Status) -> usize {
    checks.iter().filter(|c| c.status == status).count()
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "n/a".to_string(), |v| v.to_string())
}

impl Report {
    pub fn failed(&self) -> usize {
        count(&self.checks, Status::Fail)
    }

    pub fn skipped(&self) -> usize {
        count(&self.checks, Status::Skipped)
    }

    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check_id == id)
    }

    pub fn to_text(&self) -> String {
        let s = &self.summary;
        let mut out = format!(
            "{} (size {}, hash {})\n",
            self.lattice.name, self.lattice.size, self.lattice.hash
        );
        let _ = writeln!(
            out,
            "  distributive={} cd={} |Q|={} girard={} dualizing={} automorphisms={} tight_unital={} autodual={}",
            s.is_distributive,
            s.is_cd,
            opt(&s.homset_size),
            opt(&s.is_girard),
            opt(&s.dualizing_count),
            opt(&s.automorphism_count),
            opt(&s.tight_unital),
            opt(&s.autodual_verdict),
        );
        for c in &self.checks {
            out.push_str(&c.text_line());
            out.push('\n');
        }
        out
    }
}

/// Results of the checks on an explicitly given quantale.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantaleReport {
    pub carrier: LatticeDescriptor,
    pub unit: Option<String>,
    pub cyclic: Vec<String>,
    pub dualizing: Vec<String>,
    pub checks: Vec<CheckResult>,
}

impl QuantaleReport {
    pub fn failed(&self) -> usize {
        count(&self.checks, Status::Fail)
    }

    pub fn skipped(&self) -> usize {
        count(&self.checks, Status::Skipped)
    }

    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check_id == id)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} (size {}, hash {})\n", self.carrier.name, self.carrier.size, self.carrier.hash);
        let _ = writeln!(
            out,
            "  unit={} cyclic=[{}] dualizing=[{}]",
            self.unit.as_deref().unwrap_or("none"),
            self.cyclic.join(","),
            self.dualizing.join(",")
        );
        for c in &self.checks {
            out.push_str(&c.text_line());
            out.push('\n');
        }
        out
    }
}

/// Reports for a whole corpus plus the quantale checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusReport {
    pub lattices: Vec<Report>,
    pub quantales: Vec<QuantaleReport>,
}

impl CorpusReport {
    pub fn failed(&self) -> usize {
        self.lattices.iter().map(Report::failed).sum::<usize>()
            + self.quantales.iter().map(QuantaleReport::failed).sum::<usize>()
    }

    pub fn skipped(&self) -> usize {
        self.lattices.iter().map(Report::skipped).sum::<usize>()
            + self.quantales.iter().map(QuantaleReport::skipped).sum::<usize>()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.lattices {
            out.push_str(&r.to_text());
        }
        for q in &self.quantales {
            out.push_str(&q.to_text());
        }
        let total: usize =
            self.lattices.iter().map(|r| r.checks.len()).sum::<usize>() + self.quantales.iter().map(|q| q.checks.len()).sum::<usize>();
        let _ = writeln!(
            out,
            "{} checks: {} failed, {} skipped",
            total,
            self.failed(),
            self.skipped()
        );
        out
    }
}
