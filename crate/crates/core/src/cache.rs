//! On-disk memoization of invariant vectors, keyed by the canonical form of
//! the graph.  The cache is advisory: deleting it only costs recomputation,
//! and a version stamp invalidates entries written by older builds.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::invariants::InvariantVector;

/// Bump when the invariant vector layout or semantics change.
const CACHE_VERSION: u32 = 1;

/// Environment variable overriding the cache root.
pub const CACHE_ENV: &str = "COXINV_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry {
    version: u32,
    vector: InvariantVector,
}

pub struct InvariantCache {
    root: PathBuf,
}

impl InvariantCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        InvariantCache { root: root.into() }
    }

    /// Cache root from the environment, if configured.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).map(InvariantCache::new)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn path_for(&self, canonical: &[u8]) -> PathBuf {
        let digest = Sha256::digest(canonical);
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.root.join(&hex[0..2]).join(&hex[2..4]).join(format!("{hex}.json"))
    }

    pub fn get(&self, canonical: &[u8]) -> Option<InvariantVector> {
        let text = fs::read_to_string(self.path_for(canonical)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.version == CACHE_VERSION).then_some(entry.vector)
    }

    /// Best effort: IO failures are swallowed, the caller already has the
    /// computed value.
    pub fn put(&self, canonical: &[u8], vector: &InvariantVector) {
        let path = self.path_for(canonical);
        let Some(parent) = path.parent() else { return };
        if fs::create_dir_all(parent).is_err() {
            return;
        }
        let entry = Entry {
            version: CACHE_VERSION,
            vector: vector.clone(),
        };
        if let Ok(text) = serde_json::to_string(&entry) {
            let _ = fs::write(path, text);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Analyzer;
    use crate::canon::canonical_form;
    use crate::graph::CoxeterGraph;
    use crate::invariants::invariant_vector;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = InvariantCache::new(dir.path());
        let g = CoxeterGraph::parse("a b 3\nb c 5").unwrap();
        let key = canonical_form(&g);
        assert!(cache.get(&key).is_none());
        let v = invariant_vector(&Analyzer::new(&g));
        cache.put(&key, &v);
        assert_eq!(cache.get(&key), Some(v));
    }

    #[test]
    fn corrupt_entry_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = InvariantCache::new(dir.path());
        let g = CoxeterGraph::parse("a b 7").unwrap();
        let key = canonical_form(&g);
        let v = invariant_vector(&Analyzer::new(&g));
        cache.put(&key, &v);
        let path = cache.path_for(&key);
        fs::write(&path, "not json").unwrap();
        assert!(cache.get(&key).is_none());
    }
}
