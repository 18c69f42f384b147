//! Versioned CSV time series.
//!
//! Every file starts with a `# schema: <name> v<version>` line followed by
//! the column header; numbers are written with 17 significant digits so a
//! rerun reproduces the files byte for byte.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Schema {
    pub name: &'static str,
    pub version: u32,
    pub columns: &'static [&'static str],
}

impl Schema {
    fn tag(&self) -> String {
        format!("# schema: {} v{}", self.name, self.version)
    }
}

pub const OSCILLATOR: Schema = Schema {
    name: "harmonium.oscillator",
    version: 1,
    columns: &["t", "abs_x", "phi", "phi_dot"],
};

pub const DENSITY: Schema = Schema {
    name: "harmonium.density",
    version: 1,
    columns: &["t", "r", "n"],
};

pub const STRUCTURE_FACTOR: Schema = Schema {
    name: "harmonium.structure_factor",
    version: 1,
    columns: &["t", "k", "f_cm", "f_rm", "f_tot"],
};

pub struct CsvWriter {
    path: PathBuf,
    width: usize,
    inner: BufWriter<File>,
}

impl CsvWriter {
    pub fn create(path: impl Into<PathBuf>, schema: Schema) -> Result<Self> {
        let path = path.into();
        let file = File::create(&path).map_err(|e| CliError::io(&path, e))?;
        let mut w = Self {
            width: schema.columns.len(),
            inner: BufWriter::new(file),
            path,
        };
        let head = format!("{}\n{}\n", schema.tag(), schema.columns.join(","));
        w.inner
            .write_all(head.as_bytes())
            .map_err(|e| CliError::io(&w.path, e))?;
        Ok(w)
    }

    pub fn row(&mut self, values: &[f64]) -> Result<()> {
        debug_assert_eq!(values.len(), self.width);
        let line = values
            .iter()
            .map(|v| format!("{v:.16e}"))
            .collect::<Vec<_>>()
            .join(",");
        writeln!(self.inner, "{line}").map_err(|e| CliError::io(&self.path, e))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn finish(mut self) -> Result<PathBuf> {
        self.inner
            .flush()
            .map_err(|e| CliError::io(&self.path, e))?;
        Ok(self.path)
    }
}

/// A CSV file read back under a known schema.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    /// Rows grouped by equal values of the first column, in file order.
    pub fn blocks(&self) -> Vec<&[Vec<f64>]> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.rows.len() {
            if i == self.rows.len() || self.rows[i][0] != self.rows[start][0] {
                out.push(&self.rows[start..i]);
                start = i;
            }
        }
        out
    }
}

/// Reads a file written under `schema`, rejecting files whose schema line
/// or header does not match.
pub fn read_table(path: impl AsRef<Path>, schema: Schema) -> Result<Table> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut lines = BufReader::new(file).lines();
    let bad = |message: String| CliError::Schema {
        path: path.to_path_buf(),
        message,
    };
    let mut next = || -> Result<Option<String>> {
        lines.next().transpose().map_err(|e| CliError::io(path, e))
    };
    let tag = next()?.unwrap_or_default();
    if tag.trim() != schema.tag() {
        return Err(bad(format!(
            "expected `{}`, found `{}`",
            schema.tag(),
            tag.trim()
        )));
    }
    let header = next()?.unwrap_or_default();
    let columns: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
    if columns != schema.columns {
        return Err(bad(format!(
            "expected columns {}, found `{header}`",
            schema.columns.join(",")
        )));
    }
    let mut rows = Vec::new();
    let mut line_no = 2;
    while let Some(line) = next()? {
        line_no += 1;
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| bad(format!("line {line_no}: {e}")))?;
        if row.len() != columns.len() {
            return Err(bad(format!(
                "line {line_no}: {} fields, expected {}",
                row.len(),
                columns.len()
            )));
        }
        rows.push(row);
    }
    Ok(Table { columns, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        let mut w = CsvWriter::create(&path, DENSITY).unwrap();
        let rows = [[0.0, 0.1, 1.0 / 3.0], [0.0, 0.2, 2e-300], [0.5, 0.1, -0.0]];
        for r in &rows {
            w.row(r).unwrap();
        }
        w.finish().unwrap();
        let t = read_table(&path, DENSITY).unwrap();
        assert_eq!(t.rows.len(), 3);
        for (a, b) in t.rows.iter().zip(&rows) {
            assert_eq!(a.as_slice(), b.as_slice());
        }
        assert_eq!(t.blocks().len(), 2);
        assert_eq!(t.column("r").unwrap(), vec![0.1, 0.2, 0.1]);
    }

    #[test]
    fn stale_schema_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        std::fs::write(&path, "# schema: harmonium.density v0\nt,r,n\n0,0,1\n").unwrap();
        assert!(matches!(
            read_table(&path, DENSITY),
            Err(CliError::Schema { .. })
        ));
        std::fs::write(&path, "# schema: harmonium.density v1\nt,n,r\n0,0,1\n").unwrap();
        assert!(matches!(
            read_table(&path, DENSITY),
            Err(CliError::Schema { .. })
        ));
        assert!(matches!(
            read_table(&path, OSCILLATOR),
            Err(CliError::Schema { .. })
        ));
    }
}
