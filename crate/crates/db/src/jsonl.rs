//! JSONL files: one record per line, sorted by key, unique keys.

use std::collections::HashSet;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{DbError, Result};
use crate::record::Keyed;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> DbError + '_ {
    move |source| DbError::Io { path: path.to_path_buf(), source }
}

/// Parses JSONL text; `origin` is only used in error messages.
pub fn parse_jsonl<T: DeserializeOwned + Keyed>(text: &str, origin: &Path) -> Result<Vec<T>> {
    let mut out: Vec<T> = Vec::new();
    let mut keys = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec: T = serde_json::from_str(line).map_err(|e| DbError::Parse {
            path: origin.to_path_buf(),
            line: i + 1,
            message: e.to_string(),
        })?;
        if !keys.insert(rec.key().to_string()) {
            return Err(DbError::DuplicateKey(rec.key().to_string()));
        }
        out.push(rec);
    }
    Ok(out)
}

pub fn read_jsonl<T: DeserializeOwned + Keyed>(path: &Path) -> Result<Vec<T>> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_jsonl(&text, path)
}

/// Serializes records sorted by key, one per line.
pub fn to_jsonl<T: Serialize + Keyed>(records: &[T]) -> Result<String> {
    let mut refs: Vec<&T> = records.iter().collect();
    refs.sort_by(|a, b| a.key().cmp(b.key()));
    for w in refs.windows(2) {
        if w[0].key() == w[1].key() {
            return Err(DbError::DuplicateKey(w[0].key().to_string()));
        }
    }
    let mut out = String::new();
    for r in refs {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    Ok(out)
}

/// Writes via a temporary file in the target directory and an atomic rename,
/// so readers never observe a partial file.
pub fn write_jsonl<T: Serialize + Keyed>(path: &Path, records: &[T]) -> Result<()> {
    let text = to_jsonl(records)?;
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(path))?;
    tmp.write_all(text.as_bytes()).map_err(io_err(path))?;
    tmp.as_file().sync_all().map_err(io_err(path))?;
    tmp.persist(path).map_err(|e| DbError::Io { path: path.to_path_buf(), source: e.error })?;
    Ok(())
}
