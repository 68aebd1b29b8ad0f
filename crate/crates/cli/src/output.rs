use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Both,
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)
        .with_context(|| format!("cannot create temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Emits the JSON and/or CSV renderings. With `--format both` the CSV goes
/// next to the JSON file with a `.csv` extension.
pub fn emit(out: Option<&Path>, format: Format, json: &str, csv: &str) -> Result<()> {
    match out {
        Some(path) => match format {
            Format::Json => write_atomic(path, json.as_bytes()),
            Format::Csv => write_atomic(path, csv.as_bytes()),
            Format::Both => {
                write_atomic(path, json.as_bytes())?;
                write_atomic(&path.with_extension("csv"), csv.as_bytes())
            }
        },
        None => {
            let mut stdout = std::io::stdout().lock();
            if format != Format::Csv {
                stdout.write_all(json.as_bytes())?;
            }
            if format != Format::Json {
                stdout.write_all(csv.as_bytes())?;
            }
            Ok(())
        }
    }
}
