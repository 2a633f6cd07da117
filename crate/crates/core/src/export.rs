//! CSV and JSON output.
//!
//! Floats are written with Rust's shortest round-trip formatting, so equal
//! values always produce equal bytes.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::correlations::{ConditionalTrace, CorrelationSurface, OracleRow};
use crate::params::SystemParams;
use crate::spectra::{FrequencyGrid2D, Peak, Quantity, ResonancePrediction, SpectralField2D};
use crate::Result;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

pub fn write_field_csv(path: &Path, field: &SpectralField2D) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "nu1,nu2,re,im,abs")?;
    let g = &field.grid;
    for ((i, j), v) in field.values.indexed_iter() {
        writeln!(w, "{},{},{},{},{}", g.nu1(i), g.nu2(j), v.re, v.im, v.norm())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_surface_csv(path: &Path, surface: &CorrelationSurface) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "tau31,tau32,r3")?;
    for ((i, j), v) in surface.r3.indexed_iter() {
        writeln!(w, "{},{},{}", surface.tau31_axis[i], surface.tau32_axis[j], v)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_traces_csv(path: &Path, traces: &[&ConditionalTrace]) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "tau,r2,traced_over")?;
    for t in traces {
        for (tau, r) in t.tau_axis.iter().zip(&t.r2) {
            writeln!(w, "{},{},{}", tau, r, t.traced_over.as_str())?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Detected peaks next to the nearest predicted pathway (if any).
pub fn write_peaks_csv(path: &Path, peaks: &[Peak], prediction: Option<&ResonancePrediction>) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "rank,nu1,nu2,abs,pred_nu1,pred_nu2,pred_nu3,distance")?;
    for (k, p) in peaks.iter().enumerate() {
        write!(w, "{},{},{},{}", k + 1, p.nu1, p.nu2, p.value)?;
        match prediction.and_then(|r| nearest_pathway(r, p.nu1, p.nu2)) {
            Some((t, d)) => writeln!(w, ",{},{},{},{}", t[0], t[1], t[2], d)?,
            None => writeln!(w, ",,,,")?,
        }
    }
    w.flush()?;
    Ok(())
}

pub fn nearest_pathway(r: &ResonancePrediction, nu1: f64, nu2: f64) -> Option<([f64; 3], f64)> {
    r.pathways
        .iter()
        .map(|t| (*t, (t[0] - nu1).hypot(t[1] - nu2)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
}

pub fn write_oracle_csv(path: &Path, rows: &[OracleRow]) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "tau31,tau32,transform_re,transform_im,quadrature_re,quadrature_im,deviation")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            r.tau31, r.tau32, r.transform.re, r.transform.im, r.quadrature.re, r.quadrature.im, r.deviation
        )?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let mut hasher = Sha256::new();
    let mut f = File::open(path)?;
    let mut buf = vec![0u8; 1 << 16];
    loop {
        let n = f.read(&mut buf)?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(hex::encode(hasher.finalize()))
}

/// Hash of everything that determines a run's numbers.
pub fn provenance_hash(params: &SystemParams, grid: &FrequencyGrid2D, what: &str) -> Result<String> {
    let text = serde_json::to_string(&(params, grid, what, VERSION))?;
    Ok(sha256_hex(text.as_bytes()))
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldSidecar<'a> {
    pub quantity: Quantity,
    pub params: &'a SystemParams,
    pub grid: &'a FrequencyGrid2D,
    pub scale: f64,
    pub units: &'static str,
    pub provenance: String,
    pub version: &'static str,
}

impl<'a> FieldSidecar<'a> {
    pub fn new(field: &'a SpectralField2D, params: &'a SystemParams) -> Result<Self> {
        Ok(Self {
            quantity: field.quantity,
            params,
            grid: &field.grid,
            scale: field.scale,
            units: "gamma31",
            provenance: provenance_hash(params, &field.grid, field.quantity.as_str())?,
            version: VERSION,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct OutputEntry {
    /// Path relative to the output directory.
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

impl OutputEntry {
    pub fn for_file(dir: &Path, name: &str) -> Result<Self> {
        let path = dir.join(name);
        Ok(Self { path: name.to_string(), sha256: sha256_file(&path)?, bytes: std::fs::metadata(&path)?.len() })
    }
}
