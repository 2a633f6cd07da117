//! HE versus PCR comparison.

use serde::Serialize;

use crate::exec::Schedule;
use crate::params::SystemParams;
use crate::response::{chi_s3_he, chi_s3_pcr};
use crate::spectra::{evaluate_with, FrequencyGrid2D, Quantity, SpectralField2D, DEFAULT_MAX_POINTS};
use crate::Result;

/// L² distance between the unit-peak magnitude profiles of two fields,
/// relative to the larger profile norm. Zero iff the shapes coincide.
pub fn shape_distance(a: &SpectralField2D, b: &SpectralField2D) -> f64 {
    let (ma, mb) = (a.max_abs(), b.max_abs());
    let mut diff = 0.0;
    let (mut na, mut nb) = (0.0, 0.0);
    for (x, y) in a.values.iter().zip(b.values.iter()) {
        let (u, v) = (x.norm() / ma, y.norm() / mb);
        diff += (u - v) * (u - v);
        na += u * u;
        nb += v * v;
    }
    (diff / f64::max(na, nb)).sqrt()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShapeDistance {
    pub a: Quantity,
    pub b: Quantity,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareReport {
    /// max |χs3^HE − χs3^PCR| / max |χs3^HE| over the grid.
    pub chi_s3_max_deviation: f64,
    pub distances: Vec<ShapeDistance>,
}

impl CompareReport {
    pub fn min_distance(&self) -> f64 {
        self.distances.iter().map(|d| d.distance).fold(f64::INFINITY, f64::min)
    }
}

pub fn compare_pcr(params: &SystemParams, grid: &FrequencyGrid2D, schedule: Schedule) -> Result<CompareReport> {
    grid.validate()?;
    let mut dev = 0.0f64;
    let mut max = 0.0f64;
    for i in 0..grid.n1 {
        let a = grid.nu1(i);
        for j in 0..grid.n2 {
            let b = grid.nu2(j);
            let he = chi_s3_he(params, a, b);
            let pcr = chi_s3_pcr(params, -(a + b));
            dev = dev.max((he - pcr).norm());
            max = max.max(he.norm());
        }
    }
    let quantities = [Quantity::Chi5He, Quantity::Chi5PcrS1, Quantity::Chi5PcrS2, Quantity::Chi5PcrS3];
    let fields: Vec<SpectralField2D> = quantities
        .iter()
        .map(|&q| evaluate_with(q, params, grid, schedule, DEFAULT_MAX_POINTS))
        .collect::<Result<_>>()?;
    let mut distances = Vec::new();
    for x in 0..fields.len() {
        for y in x + 1..fields.len() {
            distances.push(ShapeDistance {
                a: quantities[x],
                b: quantities[y],
                distance: shape_distance(&fields[x], &fields[y]),
            });
        }
    }
    Ok(CompareReport { chi_s3_max_deviation: if max > 0.0 { dev / max } else { dev }, distances })
}
