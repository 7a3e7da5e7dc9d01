use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use shellgap_core::ENGINE_VERSION;

/// Directory of JSON results keyed by command, `n`, sequence index and
/// engine version.
pub struct ResultStore {
    dir: Option<PathBuf>,
    force: bool,
}

#[derive(Serialize, Deserialize)]
struct Stored<T> {
    command: String,
    n: usize,
    index: Option<u64>,
    engine_version: String,
    result: T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Key {
    pub command: String,
    pub n: usize,
    pub index: Option<u64>,
    /// Extra qualifiers such as search limits, already sanitized.
    pub variant: Option<String>,
}

impl Key {
    pub fn new(command: &str, n: usize) -> Self {
        Key {
            command: command.to_string(),
            n,
            index: None,
            variant: None,
        }
    }

    pub fn index(mut self, i: u64) -> Self {
        self.index = Some(i);
        self
    }

    pub fn variant(mut self, v: impl Into<String>) -> Self {
        let v: String = v.into();
        self.variant = (!v.is_empty()).then(|| {
            v.chars()
                .map(|c| {
                    if c.is_ascii_alphanumeric() || c == '-' {
                        c
                    } else {
                        '_'
                    }
                })
                .collect()
        });
        self
    }

    fn file_name(&self) -> String {
        let mut name = format!("{}-n{}", self.command, self.n);
        if let Some(i) = self.index {
            name.push_str(&format!("-i{i}"));
        }
        if let Some(v) = &self.variant {
            name.push_str(&format!("-{v}"));
        }
        format!("{name}-v{ENGINE_VERSION}.json")
    }
}

impl ResultStore {
    pub fn new(dir: Option<PathBuf>, force: bool) -> Self {
        ResultStore { dir, force }
    }

    pub fn path(&self, key: &Key) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(key.file_name()))
    }

    /// Stored result for `key`, unless the store is disabled or `--force`
    /// was given.
    pub fn get<T: DeserializeOwned>(&self, key: &Key) -> Result<Option<T>> {
        if self.force {
            return Ok(None);
        }
        self.peek(key)
    }

    /// Like [`get`](Self::get) but ignores `--force`; used for cells that are
    /// only ever read, never recomputed.
    pub fn peek<T: DeserializeOwned>(&self, key: &Key) -> Result<Option<T>> {
        let Some(path) = self.path(key) else {
            return Ok(None);
        };
        if !path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let stored: Stored<T> = serde_json::from_str(&text)
            .with_context(|| format!("corrupt stored result {}", path.display()))?;
        if stored.engine_version != ENGINE_VERSION || stored.command != key.command || stored.n != key.n {
            return Ok(None);
        }
        Ok(Some(stored.result))
    }

    pub fn put<T: Serialize>(&self, key: &Key, result: &T) -> Result<()> {
        let Some(path) = self.path(key) else {
            return Ok(());
        };
        let dir = path.parent().unwrap_or(Path::new("."));
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let stored = Stored {
            command: key.command.clone(),
            n: key.n,
            index: key.index,
            engine_version: ENGINE_VERSION.to_string(),
            result,
        };
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string_pretty(&stored)? + "\n")
            .with_context(|| format!("writing {}", tmp.display()))?;
        fs::rename(&tmp, &path).with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }

    /// Returns the stored value or computes and stores it.
    pub fn get_or_compute<T, F>(&self, key: &Key, compute: F) -> Result<T>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        if let Some(hit) = self.get(key)? {
            log_hit(self.path(key).as_deref());
            return Ok(hit);
        }
        let value = compute()?;
        self.put(key, &value)?;
        Ok(value)
    }
}

fn log_hit(path: Option<&Path>) {
    if let Some(p) = path {
        eprintln!("cached: {}", p.display());
    }
}
