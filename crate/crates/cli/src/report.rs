use serde::{Deserialize, Serialize};

use crate::config::Config;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Hard part passed; a soft comparison found differences and recorded them.
    DiscrepancyRecorded,
}

impl Status {
    pub fn is_pass(self) -> bool {
        self != Status::Fail
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::DiscrepancyRecorded => "PASS (discrepancy recorded)",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub criterion: u8,
    pub name: String,
    pub status: Status,
    /// `log10` of the worst error, for numerical checks.
    pub max_error_log10: Option<f64>,
    pub runtime_seconds: f64,
    pub provenance: String,
    pub details: Vec<String>,
}

impl CheckResult {
    pub fn line(&self) -> String {
        let err = self.max_error_log10.map(|e| format!(" max_err=1e{e:.1}")).unwrap_or_default();
        format!("criterion {:>2} {:<18} {}{} ({:.1}s)", self.criterion, self.name, self.status.label(), err, self.runtime_seconds)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub config: Config,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status.is_pass())
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&c.line());
            s.push('\n');
            for d in &c.details {
                s.push_str("    ");
                s.push_str(d);
                s.push('\n');
            }
        }
        s
    }
}
