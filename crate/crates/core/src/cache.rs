//! Persistent text cache and the shared character-table store.
//!
//! Files are published atomically: written to a temporary file in the target
//! directory, then renamed into place. Readers either see a complete file or
//! nothing.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use parking_lot::RwLock;
use thiserror::Error;

use crate::characters::{CharacterTable, TableParseError};

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "EQLC_CACHE_DIR";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache file {path} is corrupt: {reason}")]
    Corrupt { path: PathBuf, reason: String },
    #[error("cache i/o on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Error)]
pub enum StoreError {
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("character table computation for n={n} failed: {reason}")]
    Compute { n: usize, reason: String },
}

#[derive(Clone, Debug)]
pub struct DiskCache {
    root: PathBuf,
}

impl DiskCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    /// Uses `EQLC_CACHE_DIR` when set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV)
            .filter(|v| !v.is_empty())
            .map(Self::new)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.root.join(key)
    }

    pub fn read(&self, key: &str) -> Result<Option<String>, CacheError> {
        let path = self.path(key);
        match fs::read_to_string(&path) {
            Ok(s) => Ok(Some(s)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(source) => Err(CacheError::Io { path, source }),
        }
    }

    pub fn write(&self, key: &str, contents: &str) -> Result<(), CacheError> {
        let path = self.path(key);
        let dir = path.parent().unwrap_or(&self.root).to_path_buf();
        let io = |source| CacheError::Io {
            path: path.clone(),
            source,
        };
        fs::create_dir_all(&dir).map_err(io)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io)?;
        tmp.write_all(contents.as_bytes()).map_err(io)?;
        tmp.flush().map_err(io)?;
        tmp.persist(&path).map_err(|e| io(e.error))?;
        Ok(())
    }

    pub fn corrupt(&self, key: &str, reason: impl ToString) -> CacheError {
        CacheError::Corrupt {
            path: self.path(key),
            reason: reason.to_string(),
        }
    }
}

pub fn chartab_key(n: usize) -> String {
    format!("chartab/n{n}.txt")
}

/// Character tables, memoized in memory and optionally on disk.
#[derive(Debug, Default)]
pub struct CharacterStore {
    disk: Option<DiskCache>,
    tables: RwLock<HashMap<usize, Arc<CharacterTable>>>,
}

impl CharacterStore {
    pub fn in_memory() -> Self {
        Self::default()
    }

    pub fn with_disk(disk: DiskCache) -> Self {
        Self {
            disk: Some(disk),
            tables: RwLock::default(),
        }
    }

    pub fn disk(&self) -> Option<&DiskCache> {
        self.disk.as_ref()
    }

    pub fn table(&self, n: usize) -> Result<Arc<CharacterTable>, StoreError> {
        if let Some(t) = self.tables.read().get(&n) {
            return Ok(t.clone());
        }
        let table = Arc::new(self.load_or_compute(n)?);
        Ok(self.tables.write().entry(n).or_insert(table).clone())
    }

    fn load_or_compute(&self, n: usize) -> Result<CharacterTable, StoreError> {
        let key = chartab_key(n);
        if let Some(disk) = &self.disk {
            if let Some(text) = disk.read(&key)? {
                return CharacterTable::from_cache_text(&text)
                    .and_then(|t| {
                        if t.n() == n {
                            Ok(t)
                        } else {
                            Err(TableParseError::Header(format!("n={} in file for n={n}", t.n())))
                        }
                    })
                    .map_err(|e| disk.corrupt(&key, e).into());
            }
        }
        let table = CharacterTable::compute(n);
        table.check_orthogonality().map_err(|e| StoreError::Compute {
            n,
            reason: e.to_string(),
        })?;
        if let Some(disk) = &self.disk {
            disk.write(&key, &table.to_cache_text())?;
        }
        Ok(table)
    }
}
