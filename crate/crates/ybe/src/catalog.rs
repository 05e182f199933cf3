//! A persistent catalog of verification results: one JSON object per
//! line, append-only. Entries key solutions by the SHA-256 digest of
//! their canonical JSON, so re-runs of the same input are recognisable
//! across machines.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::certificate::Certificate;
use crate::families::FamilyParams;
use crate::solution::Solution;

/// Environment variable naming the default catalog file.
pub const CATALOG_ENV_VAR: &str = "YBE_CATALOG";

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog io: {0}")]
    Io(#[from] std::io::Error),
    #[error("catalog line {line} is not a valid entry: {source}")]
    BadEntry {
        line: usize,
        source: serde_json::Error,
    },
}

/// SHA-256 digest of the canonical solution JSON, hex-encoded.
pub fn solution_hash(s: &Solution) -> String {
    hex::encode(Sha256::digest(s.to_json_string().as_bytes()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    /// Seconds since the Unix epoch at append time.
    pub timestamp: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<FamilyParams>,
    pub hash: String,
    pub certificate: Certificate,
}

impl CatalogEntry {
    pub fn new(s: &Solution, certificate: Certificate) -> CatalogEntry {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        CatalogEntry {
            timestamp,
            family: s.family().cloned(),
            hash: solution_hash(s),
            certificate,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("entry serialisation cannot fail")
    }
}

/// Filters for `catalog query`. Unset fields match everything.
#[derive(Clone, Debug, Default)]
pub struct CatalogFilter {
    pub family: Option<String>,
    pub cardinality: Option<usize>,
    pub simple: Option<bool>,
    pub indecomposable: Option<bool>,
    pub irretractable: Option<bool>,
    /// Keep only entries with a nonempty singular-prime list.
    pub singular: bool,
}

impl CatalogFilter {
    pub fn matches(&self, entry: &CatalogEntry) -> bool {
        if let Some(family) = &self.family {
            if entry.family.as_ref().map(|f| f.name.as_str()) != Some(family.as_str()) {
                return false;
            }
        }
        if let Some(n) = self.cardinality {
            if entry.certificate.n != n {
                return false;
            }
        }
        for (want, got) in [
            (self.simple, entry.certificate.simple),
            (self.indecomposable, entry.certificate.indecomposable),
            (self.irretractable, entry.certificate.irretractable),
        ] {
            if let Some(want) = want {
                if got != Some(want) {
                    return false;
                }
            }
        }
        if self.singular {
            match &entry.certificate.singular_primes {
                Some(primes) if !primes.is_empty() => {}
                _ => return false,
            }
        }
        true
    }
}

/// An append-only JSON-lines file of catalog entries.
pub struct Catalog {
    path: PathBuf,
}

impl Catalog {
    pub fn open(path: impl AsRef<Path>) -> Catalog {
        Catalog {
            path: path.as_ref().to_path_buf(),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn append(&self, entry: &CatalogEntry) -> Result<(), CatalogError> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        file.write_all(entry.to_json_line().as_bytes())?;
        file.write_all(b"\n")?;
        Ok(())
    }

    pub fn entries(&self) -> Result<Vec<CatalogEntry>, CatalogError> {
        let text = std::fs::read_to_string(&self.path)?;
        let mut out = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let entry = serde_json::from_str(line).map_err(|source| CatalogError::BadEntry {
                line: i + 1,
                source,
            })?;
            out.push(entry);
        }
        Ok(out)
    }

    pub fn query(&self, filter: &CatalogFilter) -> Result<Vec<CatalogEntry>, CatalogError> {
        Ok(self
            .entries()?
            .into_iter()
            .filter(|e| filter.matches(e))
            .collect())
    }
}
