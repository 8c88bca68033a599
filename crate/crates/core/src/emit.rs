//! CSV and JSON rendering of result tables.
//!
//! CSV output starts with the metadata as `# key: value` comment lines, then a
//! header row and the data rows. JSON output is a single object with
//! `metadata`, `columns` and `rows`. Numbers use the shortest representation
//! that parses back to the same `f64`.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scenarios::ResultTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Parse { origin: "--format".into(), message: format!("unknown format `{other}`, expected csv or json") }),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Destination {
    Stdout,
    File(PathBuf),
}

#[derive(Serialize)]
struct JsonTable<'a> {
    metadata: &'a std::collections::BTreeMap<String, String>,
    columns: &'a [String],
    rows: &'a [Vec<f64>],
}

/// Renders the table to bytes.
pub fn render(table: &ResultTable, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Csv => render_csv(table),
        Format::Json => {
            let doc = JsonTable { metadata: &table.metadata, columns: table.columns(), rows: table.rows() };
            let mut out = serde_json::to_vec_pretty(&doc).map_err(|e| Error::Sweep(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

fn render_csv(table: &ResultTable) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for (k, v) in &table.metadata {
        // One comment line per entry, whatever the value contains.
        let v = v.replace(['\r', '\n'], " ");
        writeln!(out, "# {k}: {v}").expect("writing to a Vec cannot fail");
    }
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Sweep(format!("csv: {e}"));
    w.write_record(table.columns()).map_err(csv_err)?;
    for row in table.rows() {
        w.write_record(row.iter().map(|x| number(*x))).map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| Error::Sweep(format!("csv: {e}")))
}

/// Shortest round-trip text, switching to exponent form outside `[1e-5, 1e16)`.
fn number(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

/// Writes the rendered table to standard output or a file.
pub fn emit(table: &ResultTable, format: Format, destination: &Destination) -> Result<()> {
    write_bytes(&render(table, format)?, destination)
}

/// Writes already-rendered output, attaching the path to any I/O failure.
pub fn write_bytes(bytes: &[u8], destination: &Destination) -> Result<()> {
    match destination {
        Destination::Stdout => {
            let mut lock = std::io::stdout().lock();
            lock.write_all(bytes)
                .and_then(|_| lock.flush())
                .map_err(|source| Error::Io { path: PathBuf::from("<stdout>"), source })
        }
        Destination::File(path) => std::fs::write(path, bytes).map_err(|source| Error::Io { path: path.clone(), source }),
    }
}
