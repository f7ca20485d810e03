//! Reports emitted by classifiers and theorem verifiers.
//!
//! JSON field names are a stable contract: `{ring, property, verdict,
//! witness?, detail?, micros}`.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::ring::{Elem, StarRing};

pub use crate::unitify::{EmbeddingReport, PreservationRow};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub ring: String,
    pub property: String,
    pub verdict: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub micros: u64,
    /// Raw element indices behind `witness`, for re-checking.
    #[serde(skip)]
    pub elements: Vec<Elem>,
}

/// What a scan found, before it is rendered against a ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub verdict: bool,
    pub witness: Vec<Elem>,
    pub detail: Option<String>,
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome {
            verdict: true,
            witness: Vec::new(),
            detail: None,
        }
    }

    pub fn certified(witness: Vec<Elem>) -> Self {
        Outcome {
            verdict: true,
            witness,
            detail: None,
        }
    }

    pub fn fail(witness: Vec<Elem>) -> Self {
        Outcome {
            verdict: false,
            witness,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

impl PropertyReport {
    pub fn from_outcome(ring: &StarRing, property: &str, outcome: Outcome, micros: u64) -> Self {
        let witness = if outcome.witness.is_empty() {
            None
        } else {
            Some(outcome.witness.iter().map(|&x| ring.render(x)).collect())
        };
        PropertyReport {
            ring: ring.name().to_string(),
            property: property.to_string(),
            verdict: outcome.verdict,
            witness,
            detail: outcome.detail,
            micros,
            elements: outcome.witness,
        }
    }

    /// Runs `scan` and records its wall time.
    pub fn timed(ring: &StarRing, property: &str, scan: impl FnOnce() -> Outcome) -> Self {
        let start = Instant::now();
        let outcome = scan();
        let micros = start.elapsed().as_micros() as u64;
        Self::from_outcome(ring, property, outcome, micros)
    }

    /// Zeroes the timing so reports compare byte-for-byte across runs.
    pub fn stable(mut self) -> Self {
        self.micros = 0;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl std::fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}: {}", self.ring, self.property, self.verdict)?;
        if let Some(w) = &self.witness {
            write!(f, " witness ({})", w.join(", "))?;
        }
        if let Some(d) = &self.detail {
            write!(f, " [{d}]")?;
        }
        Ok(())
    }
}
