use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use sha2::{Digest, Sha256};

use crate::arith::HalfLaurent;
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};

/// On-disk store of Jones polynomials: one `hash TAB polynomial` line per
/// diagram, keyed by the SHA-256 of its canonical encoding. The file is
/// replaced atomically on flush.
#[derive(Debug)]
pub struct JonesCache {
    path: PathBuf,
    inner: Mutex<CacheState>,
}

#[derive(Debug, Default)]
struct CacheState {
    entries: HashMap<String, HalfLaurent>,
    dirty: bool,
}

impl JonesCache {
    /// Opens `path`, loading existing records; a missing file is an empty cache.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let mut entries = HashMap::new();
        match fs::read_to_string(&path) {
            Ok(text) => {
                for (n, line) in text.lines().enumerate() {
                    if line.trim().is_empty() {
                        continue;
                    }
                    let (hash, poly) = line.split_once('\t').ok_or_else(|| {
                        Error::Parse(format!("{}:{}: expected hash<TAB>polynomial", path.display(), n + 1))
                    })?;
                    let v: HalfLaurent = poly.parse().map_err(|e| {
                        Error::Parse(format!("{}:{}: {e}", path.display(), n + 1))
                    })?;
                    entries.insert(hash.to_string(), v);
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(e.into()),
        }
        Ok(Self { path, inner: Mutex::new(CacheState { entries, dirty: false }) })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn key(d: &LinkDiagram) -> String {
        Sha256::digest(d.canonical_encoding().as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    pub fn get(&self, d: &LinkDiagram) -> Option<HalfLaurent> {
        self.inner.lock().unwrap().entries.get(&Self::key(d)).cloned()
    }

    pub fn insert(&self, d: &LinkDiagram, v: &HalfLaurent) {
        let mut state = self.inner.lock().unwrap();
        if state.entries.insert(Self::key(d), v.clone()).is_none() {
            state.dirty = true;
        }
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Writes all records to a temporary file next to the cache and renames
    /// it into place.
    pub fn flush(&self) -> Result<()> {
        let mut state = self.inner.lock().unwrap();
        if !state.dirty {
            return Ok(());
        }
        let dir = match self.path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
            _ => PathBuf::from("."),
        };
        fs::create_dir_all(&dir)?;
        let mut lines: Vec<String> =
            state.entries.iter().map(|(k, v)| format!("{k}\t{v}")).collect();
        lines.sort();
        let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
        for l in &lines {
            writeln!(tmp, "{l}")?;
        }
        tmp.as_file().sync_all()?;
        tmp.persist(&self.path).map_err(|e| Error::Io(e.error))?;
        state.dirty = false;
        Ok(())
    }
}

impl Drop for JonesCache {
    fn drop(&mut self) {
        let _ = self.flush();
    }
}
