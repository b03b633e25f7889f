//! Memoization of zero-weight data.
//!
//! A [`ZeroSlice`] depends only on the complex type and the highest weight,
//! so real forms of the same type share it. Slices are kept in memory for
//! the lifetime of the cache and, if a directory is given, written to
//! `<dir>/v1/<type>/<c1>_<c2>_..._<cr>.json`. Unreadable or mismatching files
//! are treated as misses and rewritten.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use crate::hwmodule::{checked_dim, ZeroSlice};
use crate::rootsystem::{CartanType, RootSystem, Weight};
use crate::{Error, Result};

/// Environment variable naming a default cache directory.
pub const CACHE_DIR_ENV: &str = "SATAKE_W0_CACHE";

const LAYOUT: &str = "v1";

type Key = (CartanType, Weight);
type Slot = Arc<Mutex<Option<Arc<ZeroSlice>>>>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub memory_hits: usize,
    pub disk_hits: usize,
    pub built: usize,
}

#[derive(Debug)]
pub struct SliceCache {
    dir: Option<PathBuf>,
    memory: bool,
    slots: Mutex<HashMap<Key, Slot>>,
    memory_hits: AtomicUsize,
    disk_hits: AtomicUsize,
    built: AtomicUsize,
}

impl SliceCache {
    fn make(dir: Option<PathBuf>, memory: bool) -> Self {
        SliceCache {
            dir,
            memory,
            slots: Mutex::new(HashMap::new()),
            memory_hits: AtomicUsize::new(0),
            disk_hits: AtomicUsize::new(0),
            built: AtomicUsize::new(0),
        }
    }

    /// Every request builds from scratch.
    pub fn disabled() -> Self {
        Self::make(None, false)
    }

    pub fn in_memory() -> Self {
        Self::make(None, true)
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(dir.join(LAYOUT)).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        Ok(Self::make(Some(dir), true))
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            memory_hits: self.memory_hits.load(Ordering::Relaxed),
            disk_hits: self.disk_hits.load(Ordering::Relaxed),
            built: self.built.load(Ordering::Relaxed),
        }
    }

    pub fn path_for(dir: &Path, t: CartanType, lambda: &Weight) -> PathBuf {
        let name: Vec<String> = lambda.coords().iter().map(i64::to_string).collect();
        dir.join(LAYOUT).join(t.to_string()).join(format!("{}.json", name.join("_")))
    }

    /// The zero-weight data of `V_λ`, after checking the dimension cap.
    pub fn get(&self, rs: &RootSystem, lambda: &Weight, cap: u64) -> Result<Arc<ZeroSlice>> {
        checked_dim(rs, lambda, cap)?;
        if !self.memory {
            self.built.fetch_add(1, Ordering::Relaxed);
            return Ok(Arc::new(ZeroSlice::build(rs, lambda, cap)?));
        }
        let key = (rs.cartan_type(), lambda.clone());
        let slot = self.slots.lock().expect("cache lock").entry(key).or_default().clone();
        let mut guard = slot.lock().expect("cache slot lock");
        if let Some(s) = guard.as_ref() {
            self.memory_hits.fetch_add(1, Ordering::Relaxed);
            return Ok(s.clone());
        }
        let slice = match self.read(rs.cartan_type(), lambda) {
            Some(s) => {
                self.disk_hits.fetch_add(1, Ordering::Relaxed);
                s
            }
            None => {
                let s = ZeroSlice::build(rs, lambda, cap)?;
                self.built.fetch_add(1, Ordering::Relaxed);
                self.write(&s)?;
                s
            }
        };
        let slice = Arc::new(slice);
        *guard = Some(slice.clone());
        Ok(slice)
    }

    fn read(&self, t: CartanType, lambda: &Weight) -> Option<ZeroSlice> {
        let path = Self::path_for(self.dir.as_ref()?, t, lambda);
        let text = fs::read_to_string(path).ok()?;
        let s: ZeroSlice = serde_json::from_str(&text).ok()?;
        (s.cartan_type == t && &s.lambda == lambda).then_some(s)
    }

    fn write(&self, s: &ZeroSlice) -> Result<()> {
        let Some(dir) = &self.dir else { return Ok(()) };
        let path = Self::path_for(dir, s.cartan_type, &s.lambda);
        let err = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
        fs::create_dir_all(path.parent().expect("cache path has a parent")).map_err(err)?;
        let text = serde_json::to_string(s).map_err(|e| Error::Cache(e.to_string()))?;
        // Write then rename so concurrent readers never see a partial file.
        let tmp = path.with_extension(format!("json.{}.tmp", std::process::id()));
        fs::write(&tmp, text).map_err(err)?;
        fs::rename(&tmp, &path).map_err(err)
    }
}

/// Files under a cache directory: `(path relative to dir, bytes)`, sorted.
pub fn list(dir: &Path) -> Result<Vec<(PathBuf, u64)>> {
    let mut out = Vec::new();
    let root = dir.join(LAYOUT);
    if !root.exists() {
        return Ok(out);
    }
    let err = |e: std::io::Error| Error::Cache(format!("{}: {e}", root.display()));
    for ty in fs::read_dir(&root).map_err(err)? {
        let ty = ty.map_err(err)?.path();
        if !ty.is_dir() {
            continue;
        }
        for f in fs::read_dir(&ty).map_err(err)? {
            let f = f.map_err(err)?;
            let path = f.path();
            if path.extension().is_some_and(|x| x == "json") {
                let rel = path.strip_prefix(dir).unwrap_or(&path).to_path_buf();
                out.push((rel, f.metadata().map_err(err)?.len()));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Removes every cached file; returns how many were removed.
pub fn clear(dir: &Path) -> Result<usize> {
    let n = list(dir)?.len();
    let root = dir.join(LAYOUT);
    if root.exists() {
        fs::remove_dir_all(&root).map_err(|e| Error::Cache(format!("{}: {e}", root.display())))?;
    }
    Ok(n)
}
