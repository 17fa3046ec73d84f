//! On-disk cache of decomposition tables and simple characters.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::schur::decomp::{decomposition_numbers, decomposition_row, factors_from_map, factors_to_map, simple_characters, DecompTable, Factor};
use crate::schur::engine::Engine;

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "TILTLAB_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleChar {
    pub lambda: Partition,
    pub dominant: Vec<Factor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: u32,
    pub n: usize,
    pub d: u32,
    pub p: u32,
    pub decomp: DecompTable,
    pub simple_chars: Vec<SimpleChar>,
}

impl CacheEntry {
    pub fn characters(&self) -> BTreeMap<Partition, BTreeMap<Partition, u64>> {
        self.simple_chars.iter().map(|s| (s.lambda.clone(), factors_to_map(&s.dominant))).collect()
    }

    fn validate(&self, n: usize, d: u32, p: u32) -> Result<()> {
        if self.version != CACHE_VERSION {
            return Err(Error::Fixture(format!("cache version {} (expected {CACHE_VERSION})", self.version)));
        }
        if (self.n, self.d, self.p) != (n, d, p) || (self.decomp.n, self.decomp.d, self.decomp.p) != (n, d, p) {
            return Err(Error::Fixture("cache key mismatch".into()));
        }
        self.decomp.check(&self.characters())
    }
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// `$TILTLAB_CACHE`, else `$XDG_CACHE_HOME/tiltlab`, else `$HOME/.cache/tiltlab`.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("XDG_CACHE_HOME").map(|d| PathBuf::from(d).join("tiltlab")))
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("tiltlab")))
            .unwrap_or_else(|| std::env::temp_dir().join("tiltlab"));
        Self::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, n: usize, d: u32, p: u32) -> PathBuf {
        self.dir.join(format!("decnum_n{n}_d{d}_p{p}.json"))
    }

    /// A valid entry, or `None` if it is missing or unusable.
    pub fn load(&self, n: usize, d: u32, p: u32) -> Option<CacheEntry> {
        let path = self.path(n, d, p);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                log::warn!("cannot read {}: {e}", path.display());
                return None;
            }
        };
        let entry = serde_json::from_str::<CacheEntry>(&text)
            .map_err(Error::from)
            .and_then(|e| e.validate(n, d, p).map(|_| e));
        match entry {
            Ok(e) => Some(e),
            Err(err) => {
                log::warn!("ignoring cache file {}: {err}", path.display());
                None
            }
        }
    }

    /// Seeds `engine` with cached simple characters for (n, d, p), if an entry exists.
    pub fn warm(&self, engine: &Engine, n: usize, d: u32, p: u32) -> bool {
        match self.load(n, d, p) {
            Some(entry) => {
                engine.seed_characters(n, p, entry.characters());
                true
            }
            None => false,
        }
    }

    pub fn store(&self, entry: &CacheEntry) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let _lock = Lock::acquire(&self.dir.join(format!("decnum_n{}_d{}_p{}.lock", entry.n, entry.d, entry.p)))?;
        let path = self.path(entry.n, entry.d, entry.p);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string(entry)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

struct Lock(PathBuf);

impl Lock {
    fn acquire(path: &Path) -> Result<Self> {
        let start = Instant::now();
        loop {
            match OpenOptions::new().write(true).create_new(true).open(path) {
                Ok(_) => return Ok(Lock(path.to_path_buf())),
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                    if start.elapsed() > Duration::from_secs(30) {
                        log::warn!("removing stale lock {}", path.display());
                        let _ = fs::remove_file(path);
                    }
                    std::thread::sleep(Duration::from_millis(50));
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
}

impl Drop for Lock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

/// The decomposition table for (n, d, p), read from `cache` when possible. A fresh
/// computation is written back; write failures only produce a warning.
pub fn cached_decomposition_numbers(engine: &Engine, cache: Option<&Cache>, n: usize, d: u32, p: u32) -> Result<DecompTable> {
    if let Some(entry) = cache.and_then(|c| c.load(n, d, p)) {
        engine.seed_characters(n, p, entry.characters());
        if cfg!(debug_assertions) {
            if let Some(row) = entry.decomp.rows.first() {
                let fresh = factors_from_map(&decomposition_row(&Engine::new(engine.guards()), &row.lambda, n, p)?);
                if fresh != row.factors {
                    return Err(Error::internal(format!("cached row {} differs from a recomputation", row.lambda)));
                }
            }
        }
        return Ok(entry.decomp);
    }
    let decomp = decomposition_numbers(engine, n, d, p)?;
    if let Some(c) = cache {
        let chars = simple_characters(engine, n, d, p)?;
        let entry = CacheEntry {
            version: CACHE_VERSION,
            n,
            d,
            p,
            decomp: decomp.clone(),
            simple_chars: chars.iter().map(|(l, ch)| SimpleChar { lambda: l.clone(), dominant: factors_from_map(ch) }).collect(),
        };
        if let Err(e) = c.store(&entry) {
            log::warn!("cannot write cache in {}: {e}", c.dir().display());
        }
    }
    Ok(decomp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_recovery() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("nested"));
        let e = Engine::default();
        let a = cached_decomposition_numbers(&e, Some(&cache), 3, 6, 2).unwrap();
        assert!(cache.path(3, 6, 2).exists());
        let loaded = cache.load(3, 6, 2).unwrap();
        assert_eq!(loaded.decomp, a);
        let b = cached_decomposition_numbers(&Engine::default(), Some(&cache), 3, 6, 2).unwrap();
        assert_eq!(a, b);

        let mut stale = loaded.clone();
        stale.version = 0;
        fs::write(cache.path(3, 6, 2), serde_json::to_string(&stale).unwrap()).unwrap();
        assert!(cache.load(3, 6, 2).is_none());
        fs::write(cache.path(3, 6, 2), "{not json").unwrap();
        assert!(cache.load(3, 6, 2).is_none());
        assert_eq!(cached_decomposition_numbers(&e, Some(&cache), 3, 6, 2).unwrap(), a);
        assert!(cache.load(3, 6, 2).is_some());
    }
}
