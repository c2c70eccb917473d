//! Pass/fail entries shared by every check.

use serde::{Deserialize, Serialize};

/// One evaluated condition or relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub label: String,
    pub pass: bool,
    /// Exact residual (`0` on success).
    pub residual: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Entry {
    pub fn new(label: impl Into<String>, residual: impl ToString, pass: bool) -> Self {
        Entry {
            label: label.into(),
            pass,
            residual: residual.to_string(),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

pub fn all_pass(entries: &[Entry]) -> bool {
    entries.iter().all(|e| e.pass)
}
