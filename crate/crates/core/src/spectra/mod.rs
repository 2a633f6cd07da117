//! Spectral fields on (ν₁, ν₂) lattices and their diagnostics.

pub mod eit;
pub mod grid;
pub mod peaks;
pub mod resonances;

use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::exec::{for_each_row, Schedule};
use crate::params::SystemParams;
use crate::propagation::{phase_argument, phi};
use crate::response::{chi5_he, chi5_pcr_s1, chi5_pcr_s2, chi5_pcr_s3, chi_s3_he};
use crate::{Error, Result};

pub use eit::{eit_landscape, transparency_width};
pub use grid::{auto_grid, FrequencyGrid2D, DEFAULT_MAX_POINTS};
pub use peaks::{central_symmetry_residual, find_peaks, Peak, SymmetryReport, DEFAULT_THRESHOLD};
pub use resonances::{predicted_resonances, ResonancePrediction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    ChiS3,
    Chi5He,
    Chi5PcrS1,
    Chi5PcrS2,
    Chi5PcrS3,
    Kernel,
}

impl Quantity {
    pub const ALL: [Quantity; 6] = [
        Quantity::ChiS3,
        Quantity::Chi5He,
        Quantity::Chi5PcrS1,
        Quantity::Chi5PcrS2,
        Quantity::Chi5PcrS3,
        Quantity::Kernel,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::ChiS3 => "chi_s3",
            Quantity::Chi5He => "chi5_he",
            Quantity::Chi5PcrS1 => "chi5_pcr_s1",
            Quantity::Chi5PcrS2 => "chi5_pcr_s2",
            Quantity::Chi5PcrS3 => "chi5_pcr_s3",
            Quantity::Kernel => "kernel",
        }
    }

    /// Fifth-order quantities carry the χ⁽⁵⁾ normalization.
    pub fn is_fifth_order(self) -> bool {
        !matches!(self, Quantity::ChiS3)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL.into_iter().find(|q| q.as_str() == s).ok_or_else(|| {
            let names: Vec<_> = Quantity::ALL.iter().map(|q| q.as_str()).collect();
            Error::Config(format!("unknown quantity `{s}` (valid: {})", names.join(", ")))
        })
    }
}

/// Complex samples of one quantity; row index ν₁, column index ν₂.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField2D {
    pub grid: FrequencyGrid2D,
    pub values: Array2<Complex64>,
    pub quantity: Quantity,
    /// Prefactor applied to the raw fifth-order values (1 for χs3).
    pub scale: f64,
    /// Narrowest expected feature width, min(γe1, γe2).
    pub resolution_scale: f64,
}

impl SpectralField2D {
    /// Field built from an arbitrary function of (ν₁, ν₂); used for
    /// synthetic inputs.
    pub fn from_fn(
        grid: &FrequencyGrid2D,
        quantity: Quantity,
        resolution_scale: f64,
        f: impl Fn(f64, f64) -> Complex64,
    ) -> Self {
        let values = Array2::from_shape_fn((grid.n1, grid.n2), |(i, j)| f(grid.nu1(i), grid.nu2(j)));
        Self { grid: grid.clone(), values, quantity, scale: 1.0, resolution_scale }
    }

    /// Largest boundary |value| relative to the interior maximum.
    pub fn edge_ratio(&self) -> f64 {
        let (n1, n2) = self.values.dim();
        let mut edge = 0.0f64;
        for ((i, j), v) in self.values.indexed_iter() {
            if i == 0 || j == 0 || i == n1 - 1 || j == n2 - 1 {
                edge = edge.max(v.norm());
            }
        }
        let max = self.max_abs();
        if max == 0.0 { 0.0 } else { edge / max }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.norm()))
    }

    /// Index of the largest |value|; first in row-major order on ties.
    pub fn argmax(&self) -> (usize, usize) {
        let mut best = (0, 0);
        let mut max = f64::NEG_INFINITY;
        for ((i, j), v) in self.values.indexed_iter() {
            let a = v.norm();
            if a > max {
                max = a;
                best = (i, j);
            }
        }
        best
    }
}

pub fn evaluate(quantity: Quantity, params: &SystemParams, grid: &FrequencyGrid2D) -> Result<SpectralField2D> {
    evaluate_with(quantity, params, grid, Schedule::default(), DEFAULT_MAX_POINTS)
}

/// Samples `quantity` at every lattice point.
///
/// With no `chi5_scale` set, fifth-order fields are scaled so the largest
/// |χ⁽⁵⁾| on the grid is 1; the kernel uses the same factor.
pub fn evaluate_with(
    quantity: Quantity,
    params: &SystemParams,
    grid: &FrequencyGrid2D,
    schedule: Schedule,
    max_points: usize,
) -> Result<SpectralField2D> {
    grid.validate()?;
    params.validate()?;
    let points = grid.len();
    if points > max_points {
        return Err(Error::GridTooLarge { points, cap: max_points });
    }
    let (n1, n2) = (grid.n1, grid.n2);
    let nu2 = grid.nu2_axis();
    let mut data = vec![Complex64::new(0.0, 0.0); points];

    let f: fn(&SystemParams, f64, f64) -> Complex64 = match quantity {
        Quantity::ChiS3 => chi_s3_he,
        Quantity::Chi5He | Quantity::Kernel => chi5_he,
        Quantity::Chi5PcrS1 => chi5_pcr_s1,
        Quantity::Chi5PcrS2 => chi5_pcr_s2,
        Quantity::Chi5PcrS3 => chi5_pcr_s3,
    };
    for_each_row(schedule, &mut data, n2, |i, row| {
        let a = grid.nu1(i);
        for (v, &b) in row.iter_mut().zip(&nu2) {
            *v = f(params, a, b);
        }
    });

    let mut scale = 1.0;
    if quantity.is_fifth_order() && params.options.chi5_scale.is_none() {
        let max = data.iter().fold(0.0f64, |m, v| m.max(v.norm()));
        if max > 0.0 {
            scale = 1.0 / max;
        }
    }
    let kernel = quantity == Quantity::Kernel;
    if scale != 1.0 || kernel {
        for_each_row(schedule, &mut data, n2, |i, row| {
            let a = grid.nu1(i);
            for (v, &b) in row.iter_mut().zip(&nu2) {
                *v *= scale;
                if kernel {
                    *v *= phi(phase_argument(params, a + b));
                }
            }
        });
    }
    if let Some(k) = data.iter().position(|v| !v.is_finite()) {
        return Err(Error::Invariant(format!(
            "non-finite {quantity} sample at ({}, {})",
            k / n2,
            k % n2
        )));
    }
    let values = Array2::from_shape_vec((n1, n2), data)
        .map_err(|e| Error::Invariant(e.to_string()))?;
    Ok(SpectralField2D {
        grid: grid.clone(),
        values,
        quantity,
        scale,
        resolution_scale: params.gamma_e1().min(params.gamma_e2()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::load_preset;

    fn small(preset: &str, n: usize) -> (SystemParams, FrequencyGrid2D) {
        let p = load_preset(preset).unwrap();
        let g = &p.grid;
        let grid = FrequencyGrid2D::new(g.nu1_center, g.nu1_span, n, g.nu2_center, g.nu2_span, n).unwrap();
        (p.params, grid)
    }

    #[test]
    fn quantity_names_round_trip() {
        for q in Quantity::ALL {
            assert_eq!(q.as_str().parse::<Quantity>().unwrap(), q);
            let json = serde_json::to_string(&q).unwrap();
            assert_eq!(json, format!("\"{}\"", q.as_str()));
        }
        assert!("chi7".parse::<Quantity>().is_err());
    }

    #[test]
    fn chi5_normalized_to_unit_peak() {
        let (p, g) = small("fig2a", 128);
        let f = evaluate(Quantity::Chi5He, &p, &g).unwrap();
        assert!((f.max_abs() - 1.0).abs() < 1e-15);
        let mut fixed = p.clone();
        fixed.options.chi5_scale = Some(2.5);
        let f2 = evaluate(Quantity::Chi5He, &fixed, &g).unwrap();
        assert_eq!(f2.scale, 1.0);
        let ratio = f2.values[[3, 5]] / f.values[[3, 5]];
        assert!((ratio.re * f.scale - 2.5).abs() < 1e-12);
    }

    #[test]
    fn chi_s3_constant_along_antidiagonals() {
        // square cells so ν1+ν2 repeats exactly along i+j
        let p = load_preset("fig2a").unwrap().params;
        let g = FrequencyGrid2D::new(-100.0, 64.0, 64, 100.0, 64.0, 64).unwrap();
        let f = evaluate(Quantity::ChiS3, &p, &g).unwrap();
        for i in 1..64 {
            for j in 0..63 {
                let a = f.values[[i, j]];
                let b = f.values[[i - 1, j + 1]];
                assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-300));
            }
        }
    }

    #[test]
    fn kernel_limit_at_vanishing_od() {
        let (p, g) = small("fig3a", 64);
        let p = p.with_optical_depth(1e-6);
        let k = evaluate(Quantity::Kernel, &p, &g).unwrap();
        let c = evaluate(Quantity::Chi5He, &p, &g).unwrap();
        for (a, b) in k.values.iter().zip(c.values.iter()) {
            assert!((a - b).norm() <= 1e-3 * b.norm());
        }
    }

    #[test]
    fn kernel_envelope_on_grid() {
        let (p, g) = small("fig3c", 128);
        let k = evaluate(Quantity::Kernel, &p, &g).unwrap();
        let c = evaluate(Quantity::Chi5He, &p, &g).unwrap();
        assert_eq!(k.scale, c.scale);
        for (a, b) in k.values.iter().zip(c.values.iter()) {
            assert!(a.norm() <= b.norm() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn schedules_agree_bitwise() {
        let (p, g) = small("fig3e", 128);
        for q in Quantity::ALL {
            let a = evaluate_with(q, &p, &g, Schedule::Sequential, DEFAULT_MAX_POINTS).unwrap();
            let b = evaluate_with(q, &p, &g, Schedule::Parallel, DEFAULT_MAX_POINTS).unwrap();
            assert!(a.values.iter().zip(b.values.iter()).all(|(x, y)| x.re.to_bits() == y.re.to_bits()
                && x.im.to_bits() == y.im.to_bits()));
        }
    }

    #[test]
    fn size_cap() {
        let (p, g) = small("fig2a", 64);
        let e = evaluate_with(Quantity::Chi5He, &p, &g, Schedule::Sequential, 1000).unwrap_err();
        assert!(matches!(e, Error::GridTooLarge { points: 4096, cap: 1000 }));
    }
}
