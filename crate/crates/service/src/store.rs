//! Append-only transcript storage.
//!
//! [`FileStore`] writes one newline-delimited file per UTC day plus an
//! `index.ndjson` mapping ids to `(file, line)`. Records are stored as the
//! exact bytes produced by [`Transcript::to_json`], so reads are bit-exact.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use intersection_games_core::transcript::{Outcome, Transcript};
use intersection_games_core::VariantTag;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("transcript id `{0}` already exists")]
    DuplicateId(String),
    #[error("transcript store I/O: {0}")]
    Io(#[from] io::Error),
    #[error("corrupt transcript store: {0}")]
    Corrupt(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptMeta {
    pub id: String,
    pub variant: VariantTag,
    pub outcome: Outcome,
    pub moves: usize,
}

pub trait TranscriptStore: Send + Sync {
    fn append(&self, id: &str, transcript: &Transcript) -> Result<(), StoreError>;
    /// The stored bytes of one record.
    fn get(&self, id: &str) -> Result<Option<String>, StoreError>;
    fn list(&self) -> Result<Vec<TranscriptMeta>, StoreError>;
}

fn meta(id: &str, t: &Transcript) -> TranscriptMeta {
    TranscriptMeta {
        id: id.to_string(),
        variant: t.variant,
        outcome: t.verdict.outcome,
        moves: t.moves.len(),
    }
}

#[derive(Default)]
pub struct MemoryStore {
    records: Mutex<Vec<(TranscriptMeta, String)>>,
}

impl MemoryStore {
    pub fn new() -> Self {
        Self::default()
    }
}

impl TranscriptStore for MemoryStore {
    fn append(&self, id: &str, transcript: &Transcript) -> Result<(), StoreError> {
        let mut records = self.records.lock().expect("store lock");
        if records.iter().any(|(m, _)| m.id == id) {
            return Err(StoreError::DuplicateId(id.to_string()));
        }
        records.push((meta(id, transcript), transcript.to_json()));
        Ok(())
    }

    fn get(&self, id: &str) -> Result<Option<String>, StoreError> {
        let records = self.records.lock().expect("store lock");
        Ok(records.iter().find(|(m, _)| m.id == id).map(|(_, s)| s.clone()))
    }

    fn list(&self) -> Result<Vec<TranscriptMeta>, StoreError> {
        let records = self.records.lock().expect("store lock");
        Ok(records.iter().map(|(m, _)| m.clone()).collect())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct IndexEntry {
    #[serde(flatten)]
    meta: TranscriptMeta,
    file: String,
    line: usize,
}

struct FileState {
    index: Vec<IndexEntry>,
    by_id: HashMap<String, usize>,
    /// Lines already written to each day file.
    lines: HashMap<String, usize>,
}

pub struct FileStore {
    dir: PathBuf,
    state: Mutex<FileState>,
}

const INDEX_FILE: &str = "index.ndjson";

impl FileStore {
    /// Opens (creating if needed) a store rooted at `dir`.
    pub fn open(dir: impl AsRef<Path>) -> Result<Self, StoreError> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir)?;
        let mut index = Vec::new();
        let path = dir.join(INDEX_FILE);
        if path.exists() {
            for (n, line) in BufReader::new(File::open(&path)?).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let entry: IndexEntry = serde_json::from_str(&line)
                    .map_err(|e| StoreError::Corrupt(format!("index line {}: {e}", n + 1)))?;
                index.push(entry);
            }
        }
        let by_id = index
            .iter()
            .enumerate()
            .map(|(i, e)| (e.meta.id.clone(), i))
            .collect();
        let mut lines = HashMap::new();
        for e in &index {
            let n = lines.entry(e.file.clone()).or_insert(0);
            *n = (*n).max(e.line + 1);
        }
        Ok(FileStore {
            dir,
            state: Mutex::new(FileState {
                index,
                by_id,
                lines,
            }),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn append_line(path: &Path, line: &str) -> io::Result<()> {
        let mut f = OpenOptions::new().create(true).append(true).open(path)?;
        let mut buf = Vec::with_capacity(line.len() + 1);
        buf.extend_from_slice(line.as_bytes());
        buf.push(b'\n');
        f.write_all(&buf)?;
        f.sync_data()
    }
}

impl TranscriptStore for FileStore {
    fn append(&self, id: &str, transcript: &Transcript) -> Result<(), StoreError> {
        let mut state = self.state.lock().expect("store lock");
        if state.by_id.contains_key(id) {
            return Err(StoreError::DuplicateId(id.to_string()));
        }
        let file = format!("transcripts-{}.ndjson", chrono::Utc::now().format("%Y-%m-%d"));
        let line = *state.lines.get(&file).unwrap_or(&0);
        Self::append_line(&self.dir.join(&file), &transcript.to_json())?;
        let entry = IndexEntry {
            meta: meta(id, transcript),
            file: file.clone(),
            line,
        };
        let encoded = serde_json::to_string(&entry).expect("index entries serialize");
        Self::append_line(&self.dir.join(INDEX_FILE), &encoded)?;
        state.lines.insert(file, line + 1);
        let at = state.index.len();
        state.by_id.insert(id.to_string(), at);
        state.index.push(entry);
        Ok(())
    }

    fn get(&self, id: &str) -> Result<Option<String>, StoreError> {
        let (file, line) = {
            let state = self.state.lock().expect("store lock");
            match state.by_id.get(id) {
                Some(&i) => (state.index[i].file.clone(), state.index[i].line),
                None => return Ok(None),
            }
        };
        let reader = BufReader::new(File::open(self.dir.join(&file))?);
        match reader.lines().nth(line) {
            Some(text) => Ok(Some(text?)),
            None => Err(StoreError::Corrupt(format!("{file} has no line {}", line + 1))),
        }
    }

    fn list(&self) -> Result<Vec<TranscriptMeta>, StoreError> {
        let state = self.state.lock().expect("store lock");
        Ok(state.index.iter().map(|e| e.meta.clone()).collect())
    }
}
