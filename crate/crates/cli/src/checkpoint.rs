//! JSON scan checkpoints with a content hash.
//!
//! A checkpoint records the scan identity (range, step rule, engine
//! version) and the partial tally up to `last_completed_x`. Resuming
//! replays the remaining subrange, so an interrupted-and-resumed scan
//! produces exactly the output of an uninterrupted one. JSON is used so a
//! reviewer can audit a checkpoint by eye; the hash guards against
//! truncation and accidental edits.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt;
use std::path::Path;

#[derive(Debug)]
pub enum CheckpointError {
    Io(std::io::Error),
    Corrupt(String),
    Mismatch(String),
}

impl fmt::Display for CheckpointError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckpointError::Io(e) => write!(f, "checkpoint io error: {e}"),
            CheckpointError::Corrupt(m) => write!(f, "corrupted checkpoint: {m}"),
            CheckpointError::Mismatch(m) => write!(f, "checkpoint mismatch: {m}"),
        }
    }
}

impl std::error::Error for CheckpointError {}

impl From<std::io::Error> for CheckpointError {
    fn from(e: std::io::Error) -> Self {
        CheckpointError::Io(e)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Checkpoint {
    pub engine_version: String,
    pub range_lo: u64,
    pub range_hi: u64,
    pub primes_only: bool,
    pub step_rule: String,
    pub last_completed_x: u64,
    pub holds_count: u64,
    pub fails_count: u64,
    pub indeterminate_count: u64,
    pub counterexamples: Vec<u64>,
    #[serde(default)]
    pub hash: String,
}

impl Checkpoint {
    pub fn new(range_lo: u64, range_hi: u64, primes_only: bool) -> Self {
        Checkpoint {
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
            range_lo,
            range_hi,
            primes_only,
            step_rule: if primes_only {
                "primes-only".into()
            } else {
                "all-integers".into()
            },
            last_completed_x: range_lo.saturating_sub(1),
            holds_count: 0,
            fails_count: 0,
            indeterminate_count: 0,
            counterexamples: Vec::new(),
            hash: String::new(),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.last_completed_x >= self.range_hi
    }

    fn content_hash(&self) -> String {
        let mut plain = self.clone();
        plain.hash = String::new();
        let bytes = serde_json::to_vec(&plain).expect("checkpoint serializes");
        let digest = Sha256::digest(&bytes);
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn save(&mut self, path: &Path) -> Result<(), CheckpointError> {
        self.hash = self.content_hash();
        let json = serde_json::to_string_pretty(self).expect("checkpoint serializes");
        // write-then-rename so an interrupt cannot leave a torn file
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, json)?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Checkpoint, CheckpointError> {
        let raw = std::fs::read_to_string(path)?;
        let cp: Checkpoint = serde_json::from_str(&raw)
            .map_err(|e| CheckpointError::Corrupt(format!("invalid JSON: {e}")))?;
        let expect = cp.content_hash();
        if cp.hash != expect {
            return Err(CheckpointError::Corrupt(format!(
                "content hash {} does not match recorded {}",
                expect, cp.hash
            )));
        }
        Ok(cp)
    }

    /// Validate that a stored checkpoint belongs to the requested scan.
    pub fn validate_against(
        &self,
        range_lo: u64,
        range_hi: u64,
        primes_only: bool,
    ) -> Result<(), CheckpointError> {
        if (self.range_lo, self.range_hi, self.primes_only) != (range_lo, range_hi, primes_only) {
            return Err(CheckpointError::Mismatch(format!(
                "checkpoint covers [{}, {}] ({}), requested [{range_lo}, {range_hi}] ({})",
                self.range_lo,
                self.range_hi,
                self.step_rule,
                if primes_only {
                    "primes-only"
                } else {
                    "all-integers"
                },
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_tamper_detection() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.json");
        let mut cp = Checkpoint::new(2, 1000, false);
        cp.last_completed_x = 500;
        cp.holds_count = 400;
        cp.fails_count = 99;
        cp.counterexamples = vec![2, 3, 4];
        cp.save(&path).unwrap();

        let loaded = Checkpoint::load(&path).unwrap();
        assert_eq!(loaded, cp);
        assert!(!loaded.is_complete());

        // flip one digit in the JSON body
        let text = std::fs::read_to_string(&path).unwrap();
        let tampered = text.replace("\"holds_count\": 400", "\"holds_count\": 401");
        std::fs::write(&path, tampered).unwrap();
        assert!(matches!(
            Checkpoint::load(&path),
            Err(CheckpointError::Corrupt(_))
        ));
    }

    #[test]
    fn mismatch_detection() {
        let cp = Checkpoint::new(2, 1000, false);
        assert!(cp.validate_against(2, 1000, false).is_ok());
        assert!(cp.validate_against(2, 1001, false).is_err());
        assert!(cp.validate_against(2, 1000, true).is_err());
    }
}
