//! CSV and JSON persistence of sampled spinors.
//!
//! The CSV form carries the grid parameters in a leading `# grid` comment so
//! that quadrature weights can be rebuilt exactly on load.

use std::io::{BufRead, Write};
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{GridParams, RadialGrid};
use super::spinor::SpinorFunction;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinorRecord {
    pub r: f64,
    pub re_up: f64,
    pub im_up: f64,
    pub re_lo: f64,
    pub im_lo: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinorDocument {
    pub grid: GridParams,
    pub records: Vec<SpinorRecord>,
}

fn records(f: &SpinorFunction) -> Vec<SpinorRecord> {
    f.grid()
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let [u, l] = f.value(i);
            SpinorRecord { r, re_up: u.re, im_up: u.im, re_lo: l.re, im_lo: l.im }
        })
        .collect()
}

fn rebuild(grid: GridParams, records: &[SpinorRecord]) -> Result<SpinorFunction> {
    let grid = Arc::new(RadialGrid::new(grid)?);
    if grid.len() != records.len() {
        return Err(Error::Malformed(format!("{} records for a grid of {} nodes", records.len(), grid.len())));
    }
    for (rec, &r) in records.iter().zip(grid.nodes()) {
        if (rec.r - r).abs() > 1e-12 * r {
            return Err(Error::Malformed(format!("node {} does not match grid node {r}", rec.r)));
        }
    }
    let upper = records.iter().map(|x| Complex64::new(x.re_up, x.im_up)).collect();
    let lower = records.iter().map(|x| Complex64::new(x.re_lo, x.im_lo)).collect();
    SpinorFunction::new(grid, upper, lower)
}

pub fn write_csv<W: Write>(f: &SpinorFunction, mut out: W) -> Result<()> {
    let p = f.grid().params();
    writeln!(out, "# grid r_min={} r_max={} panels={} order={}", p.r_min, p.r_max, p.panels, p.order)?;
    let mut w = csv::Writer::from_writer(out);
    for rec in records(f) {
        w.serialize(rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: BufRead>(mut input: R) -> Result<SpinorFunction> {
    let mut first = String::new();
    input.read_line(&mut first)?;
    let grid = parse_grid_comment(&first)?;
    let mut reader = csv::Reader::from_reader(input);
    let recs = reader.deserialize().collect::<std::result::Result<Vec<SpinorRecord>, _>>()?;
    rebuild(grid, &recs)
}

fn parse_grid_comment(line: &str) -> Result<GridParams> {
    let body = line
        .trim()
        .strip_prefix("# grid")
        .ok_or_else(|| Error::Malformed("missing '# grid' header line".into()))?;
    let mut p = GridParams::default();
    let mut seen = 0;
    for field in body.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| Error::Malformed(format!("bad grid field '{field}'")))?;
        let bad = |_| Error::Malformed(format!("bad value in '{field}'"));
        match key {
            "r_min" => p.r_min = value.parse().map_err(bad)?,
            "r_max" => p.r_max = value.parse().map_err(bad)?,
            "panels" => p.panels = value.parse().map_err(|_| Error::Malformed(field.into()))?,
            "order" => p.order = value.parse().map_err(|_| Error::Malformed(field.into()))?,
            _ => return Err(Error::Malformed(format!("unknown grid field '{key}'"))),
        }
        seen += 1;
    }
    if seen != 4 {
        return Err(Error::Malformed("grid header needs r_min, r_max, panels, order".into()));
    }
    Ok(p)
}

pub fn to_json(f: &SpinorFunction) -> SpinorDocument {
    SpinorDocument { grid: f.grid().params(), records: records(f) }
}

pub fn from_json(doc: &SpinorDocument) -> Result<SpinorFunction> {
    rebuild(doc.grid, &doc.records)
}
