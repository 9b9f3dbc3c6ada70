//! Finding and report types shared by the CLI and the browser demo. The JSON
//! shapes are part of the public interface and are kept deterministic:
//! ordered maps, no wall-clock data.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One check outcome: `{check, instance, status, witnesses}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Finding {
    pub check: String,
    pub instance: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<String>,
}

impl Finding {
    pub fn pass(check: &str, instance: &str) -> Finding {
        Finding {
            check: check.into(),
            instance: instance.into(),
            status: Status::Pass,
            reason: None,
            witnesses: Vec::new(),
        }
    }

    pub fn fail(check: &str, instance: &str, reason: String) -> Finding {
        Finding {
            check: check.into(),
            instance: instance.into(),
            status: Status::Fail,
            reason: Some(reason),
            witnesses: Vec::new(),
        }
    }

    pub fn skipped(check: &str, instance: &str, reason: String) -> Finding {
        Finding {
            check: check.into(),
            instance: instance.into(),
            status: Status::Skipped,
            reason: Some(reason),
            witnesses: Vec::new(),
        }
    }

    pub fn with_witnesses(mut self, witnesses: Vec<String>) -> Finding {
        self.witnesses = witnesses;
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}
