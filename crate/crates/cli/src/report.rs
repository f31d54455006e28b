use std::io::Write;

use serde::Serialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Empty,
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
            Cell::Empty => String::new(),
        }
    }
}

/// One reproduced quantity compared with its expected value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub expected: f64,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// `|value - expected| <= tolerance`.
    pub fn absolute(name: impl Into<String>, value: f64, expected: f64, tolerance: f64) -> Self {
        let deviation = (value - expected).abs();
        Self { name: name.into(), value, expected, deviation, tolerance, pass: deviation <= tolerance }
    }

    /// Within `sigmas` standard errors.
    pub fn statistical(name: impl Into<String>, value: f64, expected: f64, stderr: f64, sigmas: f64) -> Self {
        Self::absolute(name, value, expected, sigmas * stderr)
    }

    /// `value >= bound`; `deviation` is the shortfall.
    pub fn at_least(name: impl Into<String>, value: f64, bound: f64) -> Self {
        let deviation = (bound - value).max(0.0);
        Self { name: name.into(), value, expected: bound, deviation, tolerance: 0.0, pass: value >= bound }
    }

    /// `low <= value <= high`, reported against the band centre.
    pub fn in_band(name: impl Into<String>, value: f64, low: f64, high: f64) -> Self {
        let mid = 0.5 * (low + high);
        Self {
            name: name.into(),
            value,
            expected: mid,
            deviation: (value - mid).abs(),
            tolerance: 0.5 * (high - low),
            pass: (low..=high).contains(&value),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metadata {
    pub command: String,
    pub version: String,
    pub seed: Option<u64>,
    pub quadrature: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub metadata: Metadata,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub checks: Vec<Check>,
}

/// `n_beta = 2n` Gauss-Legendre nodes, `4n + 4` equispaced in `α`, `γ`.
pub const QUADRATURE_ORDERS: &str = "n_beta=2n;n_alpha=4n+4;n_gamma=4n+4";

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            metadata: Metadata {
                command: command.to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                seed: None,
                quadrature: None,
            },
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.metadata.seed = Some(seed);
        self
    }

    pub fn with_quadrature(mut self) -> Self {
        self.metadata.quadrature = Some(QUADRATURE_ORDERS.to_string());
        self
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn write<W: Write>(&self, format: Format, out: W) -> Result<(), CliError> {
        match format {
            Format::Json => self.write_json(out),
            Format::Csv => self.write_csv(out),
        }
    }

    fn write_json<W: Write>(&self, mut out: W) -> Result<(), CliError> {
        serde_json::to_writer_pretty(&mut out, self).map_err(|e| CliError::Io(e.to_string()))?;
        writeln!(out)?;
        Ok(())
    }

    fn write_csv<W: Write>(&self, mut out: W) -> Result<(), CliError> {
        let m = &self.metadata;
        writeln!(out, "# command: {}", m.command)?;
        writeln!(out, "# version: {}", m.version)?;
        if let Some(seed) = m.seed {
            writeln!(out, "# seed: {seed}")?;
        }
        if let Some(q) = &m.quadrature {
            writeln!(out, "# quadrature: {q}")?;
        }
        for c in &self.checks {
            writeln!(
                out,
                "# check: {} value={} expected={} deviation={} tolerance={} {}",
                c.name,
                c.value,
                c.expected,
                c.deviation,
                c.tolerance,
                if c.pass { "pass" } else { "FAIL" }
            )?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns).map_err(|e| CliError::Io(e.to_string()))?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(|e| CliError::Io(e.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }
}
