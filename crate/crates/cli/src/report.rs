//! Machine-readable run reports and the exit-code policy.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

/// Ordered by severity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    /// The check does not apply to this input; exits like a pass.
    NotApplicable,
    Inconclusive,
    Fail,
}

impl Status {
    /// 0 for pass or not-applicable, 1 for a violation, 2 for inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass | Status::NotApplicable => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Self {
            name: name.into(),
            status,
            reason: None,
            witness: None,
        }
    }

    pub fn pass(name: impl Into<String>) -> Self {
        Self::new(name, Status::Pass)
    }

    pub fn from_bool(
        name: impl Into<String>,
        ok: bool,
        reason_if_failed: impl FnOnce() -> String,
    ) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::new(name, Status::Fail).reason(reason_if_failed())
        }
    }

    pub fn reason(mut self, reason: impl Into<String>) -> Self {
        self.reason = Some(reason.into());
        self
    }

    pub fn witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommandEcho {
    pub subcommand: String,
    pub args: Vec<String>,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub tool: Tool,
    pub command: CommandEcho,
    pub status: Status,
    pub checks: Vec<Check>,
    pub result: Value,
    pub timing: Timing,
}

/// What a subcommand hands back before the report envelope is added.
pub struct Outcome {
    pub checks: Vec<Check>,
    pub result: Value,
}

impl Outcome {
    pub fn new(result: Value) -> Self {
        Self {
            checks: Vec::new(),
            result,
        }
    }

    pub fn check(mut self, c: Check) -> Self {
        self.checks.push(c);
        self
    }

    /// The most severe check status, or pass when there are none.
    pub fn status(&self) -> Status {
        self.checks
            .iter()
            .map(|c| c.status)
            .max()
            .unwrap_or(Status::Pass)
    }
}
