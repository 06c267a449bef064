//! Lossless CSV and JSON round trips of sampled spinors and CLI-style JSON output.

use std::sync::Arc;

use num_complex::Complex64;

use dclab::cli::to_json_string;
use dclab::radial::io::{from_json, read_csv, to_json, write_csv};
use dclab::radial::{GridParams, RadialGrid, SpinorFunction};

fn main() -> dclab::Result<()> {
    let grid = Arc::new(RadialGrid::new(GridParams { r_min: 1e-6, r_max: 20.0, panels: 40, order: 8 })?);
    let f = SpinorFunction::from_fn(grid, |r| [Complex64::new(r, 1.0 / 3.0) * (-r).exp(), Complex64::from(r.sqrt() * (-r).exp())]);

    let mut csv = Vec::new();
    write_csv(&f, &mut csv)?;
    let from_csv = read_csv(csv.as_slice())?;
    println!("CSV: {} bytes, max difference {:e}", csv.len(), f.sub(&from_csv)?.norm());

    let text = to_json_string(&to_json(&f))?;
    let from_text = from_json(&serde_json::from_str(&text)?)?;
    println!("JSON: {} bytes, max difference {:e}", text.len(), f.sub(&from_text)?.norm());
    println!("first record: {}", to_json_string(&to_json(&f).records[0])?);
    Ok(())
}
