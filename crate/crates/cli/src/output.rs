use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::RunError;

/// Environment variable naming the output directory.
pub const OUT_DIR_ENV: &str = "DNWR_OUT";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Index(usize),
    Value(f64),
    /// No value: the run stopped early or the inversion failed.
    Empty,
}

impl Cell {
    pub fn value(self) -> Option<f64> {
        match self {
            Cell::Index(i) => Some(i as f64),
            Cell::Value(v) => Some(v),
            Cell::Empty => None,
        }
    }

    fn render(self) -> String {
        match self {
            Cell::Index(i) => i.to_string(),
            // 17 significant digits round-trip every double
            Cell::Value(v) => format!("{v:.16e}"),
            Cell::Empty => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl CsvTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    /// Values of the named column, `None` for empty cells.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j].value()).collect())
    }

    pub fn check_finite(&self) -> Result<(), RunError> {
        for (i, row) in self.rows.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                if let Cell::Value(v) = cell {
                    if !v.is_finite() {
                        return Err(RunError::NonFinite {
                            column: self.header[j].clone(),
                            row: i,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, RunError> {
        self.check_finite()?;
        let mut writer = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| RunError::Write {
            path: PathBuf::from("<memory>"),
            source: e.into(),
        };
        writer.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(|c| c.render())).map_err(io)?;
        }
        writer.into_inner().map_err(|e| RunError::Write {
            path: PathBuf::from("<memory>"),
            source: e.into_error(),
        })
    }
}

/// One CSV file of an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    /// Appended to the file stem, e.g. `T2` for `sweep_T2.csv`.
    pub suffix: Option<String>,
    pub table: CsvTable,
    /// Diagnostics that did not stop the run.
    pub notes: Vec<String>,
}

/// Destination of the output: `out_dir` wins over `env_dir`, and either one
/// replaces the directory part of the configured path.
pub fn resolve_output_path(configured: &Path, out_dir: Option<&Path>, env_dir: Option<&Path>) -> PathBuf {
    match (out_dir.or(env_dir), configured.file_name()) {
        (Some(dir), Some(name)) => dir.join(name),
        _ => configured.to_path_buf(),
    }
}

/// `dir/stem_suffix.ext` for an output with a suffix.
pub fn output_file(base: &Path, suffix: Option<&str>) -> PathBuf {
    let Some(suffix) = suffix else {
        return base.to_path_buf();
    };
    let stem = base.file_stem().map(|s| s.to_string_lossy()).unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}_{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{suffix}"),
    };
    base.with_file_name(name)
}

/// Writes every output next to `base`. Each file is replaced atomically and,
/// if any file fails, the ones already written are removed again.
pub fn write_outputs(outputs: &[ExperimentOutput], base: &Path) -> Result<Vec<PathBuf>, RunError> {
    let contents = outputs
        .iter()
        .map(|o| Ok((output_file(base, o.suffix.as_deref()), o.table.to_csv()?)))
        .collect::<Result<Vec<_>, RunError>>()?;

    let mut written = Vec::with_capacity(contents.len());
    for (path, bytes) in contents {
        if let Err(e) = write_atomic(&path, &bytes) {
            for done in &written {
                let _ = std::fs::remove_file(done);
            }
            return Err(e);
        }
        written.push(path);
    }
    Ok(written)
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), RunError> {
    let fail = |source: std::io::Error| RunError::Write {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(fail)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(bytes).map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}
