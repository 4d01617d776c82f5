//! File formats: sample CSV (no header, one time step per row), distance
//! matrix CSV (header row of ids), and the JSON manifest describing a
//! collection of sample files.
//!
//! Floats are written with Rust's shortest round-trip formatting, so
//! loading a written file reproduces the in-memory values bit for bit.

use crate::error::{Error, Result};
use crate::sample::Sample;
use crate::telescope::DistanceMatrix;
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

fn parse_f64(what: &str, s: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|e| Error::Malformed {
        what: what.to_string(),
        reason: format!("bad number `{s}`: {e}"),
    })
}

/// Write one sample: `d` comma-separated values per row, one row per step.
pub fn write_sample_csv(path: &Path, sample: &Sample) -> Result<()> {
    let mut out = String::new();
    for i in 0..sample.len() {
        let row: Vec<String> = sample.point(i).iter().map(|&v| fmt_f64(v)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// Read a sample CSV; the alphabet, when given, is validated against every
/// value.
pub fn read_sample_csv(path: &Path, id: &str, alphabet: Option<&[i64]>) -> Result<Sample> {
    let text = fs::read_to_string(path)?;
    let mut values = Vec::new();
    let mut dim = None;
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|cell| parse_f64(&format!("sample csv {} line {}", path.display(), lineno + 1), cell))
            .collect::<Result<_>>()?;
        match dim {
            None => dim = Some(row.len()),
            Some(d) if d != row.len() => {
                return Err(Error::Malformed {
                    what: format!("sample csv {}", path.display()),
                    reason: format!("row {} has {} columns, expected {d}", lineno + 1, row.len()),
                })
            }
            _ => {}
        }
        values.extend(row);
    }
    let dim = dim.ok_or_else(|| Error::Malformed {
        what: format!("sample csv {}", path.display()),
        reason: "file is empty".into(),
    })?;
    let sample = Sample::from_flat(id, dim, values)?;
    match alphabet {
        Some(a) => sample.with_alphabet(a),
        None => Ok(sample),
    }
}

/// Write a distance matrix: a header row of ids, then `N` rows of `N`
/// full-precision values.
pub fn write_matrix_csv<W: Write>(mut w: W, dm: &DistanceMatrix) -> Result<()> {
    for id in dm.ids() {
        if id.contains(',') || id.contains('\n') {
            return Err(Error::Malformed {
                what: "distance matrix".into(),
                reason: format!("id `{id}` contains a separator"),
            });
        }
    }
    writeln!(w, "{}", dm.ids().join(","))?;
    let n = dm.len();
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| fmt_f64(dm.get(i, j))).collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

pub fn write_matrix_csv_file(path: &Path, dm: &DistanceMatrix) -> Result<()> {
    let mut buf = Vec::new();
    write_matrix_csv(&mut buf, dm)?;
    fs::write(path, buf)?;
    Ok(())
}

pub fn read_matrix_csv(path: &Path) -> Result<DistanceMatrix> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Malformed {
        what: format!("matrix csv {}", path.display()),
        reason: "missing header".into(),
    })?;
    let ids: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
    let n = ids.len();
    let mut values = Vec::with_capacity(n * n);
    for (rowno, line) in lines.enumerate() {
        let row: Vec<f64> = line
            .split(',')
            .map(|cell| parse_f64(&format!("matrix csv {} row {}", path.display(), rowno + 2), cell))
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::Malformed {
                what: format!("matrix csv {}", path.display()),
                reason: format!("row {} has {} values, expected {n}", rowno + 2, row.len()),
            });
        }
        values.extend(row);
    }
    DistanceMatrix::from_parts(ids, values)
}

/// One entry of a sample manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub path: PathBuf,
    pub format: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<i64>>,
}

/// A collection of sample files; paths are resolved relative to the
/// manifest's own directory.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn push(&mut self, id: impl Into<String>, path: impl Into<PathBuf>, alphabet: Option<Vec<i64>>) {
        self.entries.push(ManifestEntry {
            id: id.into(),
            path: path.into(),
            format: "csv".into(),
            alphabet,
        });
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        self.validate()?;
        let json = serde_json::to_string_pretty(self)?;
        fs::write(path, json)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Manifest> {
        let text = fs::read_to_string(path)?;
        let manifest: Manifest = serde_json::from_str(&text)?;
        manifest.validate()?;
        Ok(manifest)
    }

    fn validate(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.entries {
            if !seen.insert(&e.id) {
                return Err(Error::DuplicateId(e.id.clone()));
            }
            if e.format != "csv" {
                return Err(Error::Malformed {
                    what: "manifest".into(),
                    reason: format!("unsupported format `{}` for `{}`", e.format, e.id),
                });
            }
        }
        Ok(())
    }

    /// Load every sample, resolving relative paths against `base_dir`.
    pub fn load_samples(&self, base_dir: &Path) -> Result<Vec<Sample>> {
        self.entries
            .iter()
            .map(|e| {
                let path = if e.path.is_absolute() { e.path.clone() } else { base_dir.join(&e.path) };
                read_sample_csv(&path, &e.id, e.alphabet.as_deref())
            })
            .collect()
    }
}
