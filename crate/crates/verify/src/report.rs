//! Structured verification reports: one JSON record per check plus an
//! aggregate CSV of per-cell values. Field order is deterministic so repeated
//! runs serialize byte-identically.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

/// One (Q, P, N, ...) evaluation cell.
#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub label: String,
    /// exact value as text on the exact backend, decimal rendering otherwise
    pub value: String,
    pub value_re: f64,
    pub value_im: f64,
    pub residual: f64,
    pub skipped: bool,
}

impl Cell {
    pub fn new(label: impl Into<String>, re: f64, im: f64, residual: f64) -> Self {
        let (re_s, im_s) = (format!("{re:.17e}"), format!("{im:.17e}"));
        Self {
            label: label.into(),
            value: format!("{re_s}+{im_s}i"),
            value_re: re,
            value_im: im,
            residual,
            skipped: false,
        }
    }

    pub fn exact(label: impl Into<String>, value: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            value: value.into(),
            value_re: f64::NAN,
            value_im: f64::NAN,
            residual: 0.0,
            skipped: false,
        }
    }

    pub fn skipped(label: impl Into<String>, reason: &str) -> Self {
        Self {
            label: label.into(),
            value: format!("skipped: {reason}"),
            value_re: f64::NAN,
            value_im: f64::NAN,
            residual: 0.0,
            skipped: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub check: String,
    pub backend: String,
    /// fixture parameters, sorted by key
    pub params: BTreeMap<String, String>,
    pub cells: Vec<Cell>,
    /// measured summary quantities (ratios, spreads, residuals, ranks)
    pub measured: BTreeMap<String, String>,
    pub outcome: Outcome,
    pub notes: Vec<String>,
    pub wall_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn write_json(&self, dir: &Path) -> std::io::Result<std::path::PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("{}.json", self.check.replace([' ', '/'], "_")));
        let mut f = std::fs::File::create(&path)?;
        f.write_all(self.to_json().as_bytes())?;
        f.write_all(b"\n")?;
        Ok(path)
    }
}

/// Builder that tracks wall time and accumulates cells/measurements.
pub struct ReportBuilder {
    check: String,
    backend: String,
    params: BTreeMap<String, String>,
    cells: Vec<Cell>,
    measured: BTreeMap<String, String>,
    notes: Vec<String>,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(check: &str, backend: &str) -> Self {
        Self {
            check: check.to_string(),
            backend: backend.to_string(),
            params: BTreeMap::new(),
            cells: Vec::new(),
            measured: BTreeMap::new(),
            notes: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn cell(&mut self, cell: Cell) -> &mut Self {
        self.cells.push(cell);
        self
    }

    pub fn measure(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.measured.insert(key.to_string(), value.to_string());
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    pub fn finish(self, outcome: Outcome) -> VerificationReport {
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            check: self.check,
            backend: self.backend,
            params: self.params,
            cells: self.cells,
            measured: self.measured,
            outcome,
            notes: self.notes,
            wall_ms: self.started.elapsed().as_millis(),
        }
    }
}

/// RFC-4180 CSV of all cells across a batch of reports (header row included).
pub fn write_cells_csv(reports: &[VerificationReport], path: &Path) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["check", "backend", "cell", "value", "value_re", "value_im", "residual", "skipped"])?;
    for r in reports {
        for c in &r.cells {
            w.write_record([
                r.check.as_str(),
                r.backend.as_str(),
                c.label.as_str(),
                c.value.as_str(),
                &c.value_re.to_string(),
                &c.value_im.to_string(),
                &c.residual.to_string(),
                &c.skipped.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}
