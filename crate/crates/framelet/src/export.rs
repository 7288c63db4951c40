//! CSV and PGM output for cascade samples and tensor generators.
//!
//! Numbers are written in the shortest form that parses back to the same
//! `f64`, so CSV files round-trip exactly.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use framelet_core::render::{CascadeGrid, Grid2D};
use framelet_core::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub fn save(path: &Path, bytes: &[u8]) -> Result<(), ExportError> {
    std::fs::write(path, bytes).map_err(|source| ExportError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// One `x,re,im` row per sample.
pub fn csv_1d(grid: &CascadeGrid) -> String {
    let mut s = String::new();
    for (j, v) in grid.values.iter().enumerate() {
        let _ = writeln!(s, "{},{},{}", grid.x(j), v.re, v.im);
    }
    s
}

/// The matrix in row-major order, one row per line.
pub fn csv_2d(grid: &Grid2D) -> String {
    let mut s = String::new();
    for row in grid.values.chunks(grid.cols.max(1)) {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        s.push_str(&line.join(","));
        s.push('\n');
    }
    s
}

/// Rows of comma-separated numbers.
pub fn parse_csv(text: &str) -> Result<Vec<Vec<f64>>, ExportError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.split(',')
                .map(|t| {
                    t.trim().parse::<f64>().map_err(|_| ExportError::Parse {
                        line: i + 1,
                        msg: format!("invalid number `{t}`"),
                    })
                })
                .collect()
        })
        .collect()
}

/// Rebuilds a 1D grid of the given level from [`csv_1d`] output.
pub fn read_csv_1d(text: &str, level: u32) -> Result<CascadeGrid, ExportError> {
    let rows = parse_csv(text)?;
    let scale = (level as f64).exp2();
    let mut values = Vec::with_capacity(rows.len());
    let mut start = 0;
    for (i, r) in rows.iter().enumerate() {
        let [x, re, im] = r[..] else {
            return Err(ExportError::Parse {
                line: i + 1,
                msg: "expected x,re,im".into(),
            });
        };
        if i == 0 {
            start = (x * scale).round() as i64;
        }
        values.push(Complex64::new(re, im));
    }
    Ok(CascadeGrid { level, start, values })
}

/// Binary greymap with `min → 0`, `max → 255`. A constant image maps to
/// 0. The top image row is the largest `y`.
pub fn pgm(grid: &Grid2D) -> Vec<u8> {
    let (lo, hi) = grid
        .values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    let (lo, hi) = if grid.values.is_empty() { (0.0, 0.0) } else { (lo, hi) };
    let span = hi - lo;
    let mut out = format!(
        "P5\n# norm min={} max={}\n{} {}\n255\n",
        lo, hi, grid.cols, grid.rows
    )
    .into_bytes();
    for row in grid.values.chunks(grid.cols.max(1)).rev() {
        out.extend(row.iter().map(|&v| {
            if span > 0.0 {
                ((v - lo) / span * 255.0).round().clamp(0.0, 255.0) as u8
            } else {
                0
            }
        }));
    }
    out
}
