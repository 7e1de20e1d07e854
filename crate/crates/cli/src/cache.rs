//! Append-only sweep cache: one JSON line per knot, keyed by its canonical
//! parameters and the options that can change a row.
//!
//! Lookups go through a read-only [`CacheIndex`] loaded at start, new rows
//! through a [`CacheWriter`], so sweep workers never contend on the file.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use pretzel_core::pcsc::{CheckOptions, SweepRow};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    key: String,
    row: SweepRow,
}

fn fingerprint(opts: &CheckOptions) -> String {
    format!("cap={};census={}", opts.bracket_cap, opts.use_census)
}

pub struct CacheIndex {
    rows: HashMap<String, SweepRow>,
    fingerprint: String,
}

impl CacheIndex {
    /// Loads the cache at `path` (missing file: empty). Lines that fail to
    /// parse, e.g. a truncated last line after an interrupted run, are skipped.
    pub fn load(path: &Path, opts: &CheckOptions) -> std::io::Result<Self> {
        let mut rows = HashMap::new();
        if path.exists() {
            for line in BufReader::new(File::open(path)?).lines() {
                if let Ok(e) = serde_json::from_str::<Entry>(&line?) {
                    rows.insert(e.key, e.row);
                }
            }
        }
        Ok(Self {
            rows,
            fingerprint: fingerprint(opts),
        })
    }

    pub fn key(&self, params: &str) -> String {
        format!("{params}|{}", self.fingerprint)
    }

    pub fn get(&self, params: &str) -> Option<&SweepRow> {
        self.rows.get(&self.key(params))
    }

    pub fn contains(&self, params: &str) -> bool {
        self.rows.contains_key(&self.key(params))
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

pub struct CacheWriter {
    out: BufWriter<File>,
    fingerprint: String,
    appended: u64,
}

impl CacheWriter {
    pub fn open(path: &Path, opts: &CheckOptions) -> std::io::Result<Self> {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(Self {
            out: BufWriter::new(file),
            fingerprint: fingerprint(opts),
            appended: 0,
        })
    }

    pub fn append(&mut self, row: &SweepRow) -> std::io::Result<()> {
        let entry = Entry {
            key: format!("{}|{}", row.params, self.fingerprint),
            row: row.clone(),
        };
        writeln!(self.out, "{}", serde_json::to_string(&entry)?)?;
        self.appended += 1;
        if self.appended.is_multiple_of(4096) {
            self.out.flush()?;
        }
        Ok(())
    }

    pub fn appended(&self) -> u64 {
        self.appended
    }

    pub fn flush(&mut self) -> std::io::Result<()> {
        self.out.flush()
    }
}
