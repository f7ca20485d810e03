//! Flat JSON store of recorded query results, keyed by descriptor hash.
//!
//! File format: `{"entries": [{"hash", "ring", "query", "value", "provenance"}]}`.
//! Entries are kept sorted by `(ring, query)` so the file diffs cleanly.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::descriptor::RingDescriptor;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoldenEntry {
    pub hash: String,
    pub ring: String,
    pub query: String,
    pub value: Value,
    pub provenance: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GoldenStore {
    pub entries: Vec<GoldenEntry>,
}

/// Result of comparing a fresh value with the store.
#[derive(Debug, Clone, PartialEq)]
pub enum Replay {
    Match,
    Missing,
    Mismatch { recorded: Value },
}

impl GoldenStore {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        if !path.exists() {
            return Ok(GoldenStore::default());
        }
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn get(&self, hash: &str, query: &str) -> Option<&GoldenEntry> {
        self.entries.iter().find(|e| e.hash == hash && e.query == query)
    }

    /// Inserts or replaces the value for `(ring, query)`.
    pub fn record(&mut self, ring: &RingDescriptor, query: &str, value: Value, provenance: &str) {
        let entry = GoldenEntry {
            hash: ring.hash_hex(),
            ring: ring.to_string(),
            query: query.to_string(),
            value,
            provenance: provenance.to_string(),
        };
        match self
            .entries
            .iter_mut()
            .find(|e| e.hash == entry.hash && e.query == entry.query)
        {
            Some(slot) => *slot = entry,
            None => self.entries.push(entry),
        }
        self.entries
            .sort_by(|a, b| (a.ring.as_str(), a.query.as_str()).cmp(&(b.ring.as_str(), b.query.as_str())));
    }

    pub fn replay(&self, ring: &RingDescriptor, query: &str, value: &Value) -> Replay {
        match self.get(&ring.hash_hex(), query) {
            None => Replay::Missing,
            Some(e) if &e.value == value => Replay::Match,
            Some(e) => Replay::Mismatch {
                recorded: e.value.clone(),
            },
        }
    }
}
