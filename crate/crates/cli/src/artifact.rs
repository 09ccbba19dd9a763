//! Result artifacts and their CSV/JSON encodings.
//!
//! CSV files start with `# key: value` metadata lines, then a header row.
//! JSON files carry the same metadata and an explicit schema version.
//! Floats use the shortest round-trip representation in both formats.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::config::Format;
use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// Provenance attached to every artifact.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub kind: String,
    pub config_hash: String,
    pub seed: u64,
}

impl Metadata {
    pub fn new(kind: &str, config_hash: String, seed: u64) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            kind: kind.to_string(),
            config_hash,
            seed,
        }
    }
}

/// One table entry.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => float_text(*v),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Int(v) => s.serialize_i64(*v),
            Cell::Float(v) if v.is_finite() => s.serialize_f64(*v),
            Cell::Float(_) | Cell::Empty => s.serialize_none(),
            Cell::Text(t) => s.serialize_str(t),
            Cell::Bool(b) => s.serialize_bool(*b),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        i64::try_from(v).map(Cell::Int).unwrap_or_else(|_| Cell::Text(v.to_string()))
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

fn float_text(v: f64) -> String {
    if v.is_finite() {
        serde_json::to_string(&v).expect("finite float")
    } else {
        v.to_string()
    }
}

/// Typed result payload.
#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Table { columns: Vec<&'static str>, rows: Vec<Vec<Cell>> },
    Grid { n: usize, resolution: usize, alpha: f64, cells: Vec<bool> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub meta: Metadata,
    pub payload: Payload,
}

impl Artifact {
    pub fn encode(&self, format: Format) -> CliResult<Vec<u8>> {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn csv(&self) -> CliResult<Vec<u8>> {
        let m = &self.meta;
        let mut buf = Vec::new();
        writeln!(buf, "# tool: {} {}", m.tool, m.version)?;
        writeln!(buf, "# schema: {SCHEMA_VERSION}")?;
        writeln!(buf, "# kind: {}", m.kind)?;
        writeln!(buf, "# config_hash: {}", m.config_hash)?;
        writeln!(buf, "# seed: {}", m.seed)?;
        if let Payload::Grid { n, resolution, alpha, .. } = &self.payload {
            let dims = vec![resolution.to_string(); *n].join(",");
            writeln!(buf, "# dims: {dims}")?;
            writeln!(buf, "# alpha: {}", float_text(*alpha))?;
        }
        let mut w = csv::Writer::from_writer(buf);
        let err = |e: csv::Error| CliError::Io(e.to_string());
        match &self.payload {
            Payload::Table { columns, rows } => {
                w.write_record(columns).map_err(err)?;
                for row in rows {
                    w.write_record(row.iter().map(Cell::csv)).map_err(err)?;
                }
            }
            Payload::Grid { cells, .. } => {
                w.write_record(["cell", "member"]).map_err(err)?;
                for (i, c) in cells.iter().enumerate() {
                    w.write_record([i.to_string(), u8::from(*c).to_string()]).map_err(err)?;
                }
            }
        }
        w.into_inner().map_err(|e| CliError::Io(e.to_string()))
    }

    fn json(&self) -> CliResult<Vec<u8>> {
        let mut buf = Vec::new();
        let mut ser = serde_json::Serializer::pretty(&mut buf);
        self.serialize(&mut ser).map_err(|e| CliError::Io(e.to_string()))?;
        buf.push(b'\n');
        Ok(buf)
    }

    /// Writes the artifact to `dir/<kind>.<ext>` through a temporary file
    /// in the same directory followed by a rename.
    pub fn write(&self, dir: &Path, format: Format) -> CliResult<PathBuf> {
        let bytes = self.encode(format)?;
        let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", dir.display()));
        std::fs::create_dir_all(dir).map_err(io)?;
        let path = dir.join(format!("{}.{}", self.meta.kind, format.extension()));
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
        tmp.write_all(&bytes).map_err(io)?;
        tmp.as_file().sync_all().map_err(io)?;
        tmp.persist(&path).map_err(|e| io(e.error))?;
        Ok(path)
    }
}

impl Serialize for Artifact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("schema", &SCHEMA_VERSION)?;
        map.serialize_entry("meta", &self.meta)?;
        match &self.payload {
            Payload::Table { columns, rows } => {
                map.serialize_entry("columns", columns)?;
                map.serialize_entry("rows", rows)?;
            }
            Payload::Grid { n, resolution, alpha, cells } => {
                map.serialize_entry("N", n)?;
                map.serialize_entry("resolution", resolution)?;
                map.serialize_entry("alpha", alpha)?;
                let bits: Vec<u8> = cells.iter().map(|c| u8::from(*c)).collect();
                map.serialize_entry("cells", &bits)?;
            }
        }
        map.end()
    }
}
