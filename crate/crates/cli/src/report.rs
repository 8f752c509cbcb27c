//! Table rows and their CSV / JSON encodings.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use crate::config::Format;

pub const HEADER: [&str; 10] = [
    "x", "n", "Kf", "f", "abs_err", "omega1", "omega2", "bound", "margin", "theorem",
];

/// One output line. Columns a mode does not produce stay `None` and are
/// written empty (CSV) or `null` (JSON).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub x: f64,
    pub n: u32,
    #[serde(rename = "Kf")]
    pub kf: Option<f64>,
    pub f: Option<f64>,
    pub abs_err: Option<f64>,
    pub omega1: Option<f64>,
    pub omega2: Option<f64>,
    pub bound: Option<f64>,
    pub margin: Option<f64>,
    pub theorem: Option<String>,
}

impl Row {
    pub fn at(n: u32, x: f64) -> Row {
        Row {
            x,
            n,
            kf: None,
            f: None,
            abs_err: None,
            omega1: None,
            omega2: None,
            bound: None,
            margin: None,
            theorem: None,
        }
    }
}

/// 17 significant digits, enough to recover the exact double.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn cell(v: Option<f64>) -> String {
    v.map(fmt_float).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[Row], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record([
            fmt_float(r.x),
            r.n.to_string(),
            cell(r.kf),
            cell(r.f),
            cell(r.abs_err),
            cell(r.omega1),
            cell(r.omega2),
            cell(r.bound),
            cell(r.margin),
            r.theorem.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(rows: &[Row], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<Row>> {
    let mut r = csv::Reader::from_reader(input);
    let opt = |s: &str| -> Result<Option<f64>> {
        if s.is_empty() {
            Ok(None)
        } else {
            Ok(Some(s.parse()?))
        }
    };
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        rows.push(Row {
            x: rec[0].parse()?,
            n: rec[1].parse()?,
            kf: opt(&rec[2])?,
            f: opt(&rec[3])?,
            abs_err: opt(&rec[4])?,
            omega1: opt(&rec[5])?,
            omega2: opt(&rec[6])?,
            bound: opt(&rec[7])?,
            margin: opt(&rec[8])?,
            theorem: Some(rec[9].to_string()).filter(|s| !s.is_empty()),
        });
    }
    Ok(rows)
}

pub fn read_json<R: io::Read>(input: R) -> Result<Vec<Row>> {
    Ok(serde_json::from_reader(input)?)
}

/// Writes `rows` to `path`, or to stdout when `path` is `None`.
pub fn emit(rows: &[Row], format: Format, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => {
            let file = File::create(p)
                .with_context(|| format!("--out: cannot write {}", p.display()))?;
            let w = BufWriter::new(file);
            match format {
                Format::Csv => write_csv(rows, w),
                Format::Json => write_json(rows, w),
            }
            .with_context(|| format!("--out: failed writing {}", p.display()))
        }
        None => {
            let w = io::stdout().lock();
            match format {
                Format::Csv => write_csv(rows, w),
                Format::Json => write_json(rows, w),
            }
        }
    }
}
