//! Append-only JSON-lines cache of solver results.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use log::warn;
use serde::{Deserialize, Serialize};

use super::{ExtremalResult, SolverMode};
use crate::error::Result;
use crate::family::GraphFamily;

pub const SOLVER_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub n: usize,
    pub family_key: Vec<String>,
    pub mode: SolverMode,
}

impl CacheKey {
    pub fn new(n: usize, family: &GraphFamily, mode: SolverMode) -> Self {
        CacheKey {
            n,
            family_key: family.family_key(),
            mode,
        }
    }

    pub fn of(result: &ExtremalResult) -> Self {
        CacheKey {
            n: result.n,
            family_key: result.family_key.clone(),
            mode: result.mode,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheRecord {
    pub key: CacheKey,
    pub result: ExtremalResult,
    pub solver_version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

/// The most recent record for `key`. A missing file is an empty cache.
pub fn cache_get(path: &Path, key: &CacheKey) -> Result<Option<CacheRecord>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut found = None;
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<CacheRecord>(&line) {
            Ok(rec) if rec.key == *key && CacheKey::of(&rec.result) == *key => found = Some(rec),
            Ok(_) => {}
            Err(e) => warn!(
                "{}:{}: skipping corrupt cache line: {e}",
                path.display(),
                i + 1
            ),
        }
    }
    Ok(found)
}

pub fn cache_put(path: &Path, result: &ExtremalResult) -> Result<()> {
    let rec = CacheRecord {
        key: CacheKey::of(result),
        result: result.clone(),
        solver_version: SOLVER_VERSION.to_string(),
        timestamp: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs()),
    };
    let mut line = serde_json::to_string(&rec)?;
    line.push('\n');
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    f.write_all(line.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{ex_enumerate, SearchBudget};
    use crate::graph::Graph;

    #[test]
    fn roundtrip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let fam: GraphFamily = [Graph::complete(3).unwrap()].into_iter().collect();
        let key = CacheKey::new(5, &fam, SolverMode::Enumerate);
        assert!(cache_get(&path, &key).unwrap().is_none());

        let r = ex_enumerate(5, &fam, &SearchBudget::default()).unwrap();
        std::fs::write(&path, "{not json\n").unwrap();
        cache_put(&path, &r).unwrap();
        let got = cache_get(&path, &key).unwrap().unwrap();
        assert_eq!(got.result, r);
        assert_eq!(got.solver_version, SOLVER_VERSION);
        assert!(
            cache_get(&path, &CacheKey::new(5, &fam, SolverMode::BranchBound))
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn key_ignores_member_order() {
        let a = Graph::path(3).unwrap();
        let b = Graph::matching(2).unwrap();
        let f1: GraphFamily = [a.clone(), b.clone()].into_iter().collect();
        let f2: GraphFamily = [b, a].into_iter().collect();
        assert_eq!(
            CacheKey::new(6, &f1, SolverMode::BranchBound),
            CacheKey::new(6, &f2, SolverMode::BranchBound)
        );
    }
}
