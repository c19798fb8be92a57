//! CSV and JSON-lines writers. CSV numbers carry 17 significant digits so
//! that every `f64` round-trips.

use serde::Serialize;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A row that knows its CSV header and cells.
pub trait Row: Serialize {
    fn header() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn escape(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

pub fn open(out: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn write_rows<R: Row>(rows: &[R], format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "{}", R::header().join(","))?;
            for row in rows {
                let cells: Vec<String> = row.cells().iter().map(|c| escape(c)).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
        }
        Format::Json => {
            for row in rows {
                serde_json::to_writer(&mut *out, row)?;
                writeln!(out)?;
            }
        }
    }
    out.flush()
}

/// One computed quantity.
#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub quantity: String,
    pub k: Option<f64>,
    pub s_re: Option<f64>,
    pub s_im: Option<f64>,
    pub value_re: f64,
    pub value_im: f64,
    pub err: f64,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl Row for OutputRecord {
    fn header() -> &'static [&'static str] {
        &["quantity", "k", "s_re", "s_im", "value_re", "value_im", "err", "method", "wall_time_ms"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.quantity.clone(),
            opt_num(self.k),
            opt_num(self.s_re),
            opt_num(self.s_im),
            num(self.value_re),
            num(self.value_im),
            num(self.err),
            self.method.clone(),
            opt_num(self.wall_time_ms),
        ]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub suite: String,
    pub check: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Row for CheckRow {
    fn header() -> &'static [&'static str] {
        &["suite", "check", "residual", "tolerance", "status"]
    }

    fn cells(&self) -> Vec<String> {
        let status = if self.passed { "pass" } else { "fail" };
        vec![self.suite.clone(), self.check.clone(), num(self.residual), num(self.tolerance), status.into()]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GridRow {
    pub s_re: f64,
    pub s_im: f64,
    pub z_re: f64,
    pub z_im: f64,
}

impl Row for GridRow {
    fn header() -> &'static [&'static str] {
        &["s_re", "s_im", "z_re", "z_im"]
    }

    fn cells(&self) -> Vec<String> {
        vec![num(self.s_re), num(self.s_im), num(self.z_re), num(self.z_im)]
    }
}
