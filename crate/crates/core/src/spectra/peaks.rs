//! Local-maximum detection and central-symmetry diagnostics.

use serde::Serialize;

use super::{Quantity, SpectralField2D};
use crate::{Error, Result};

/// Default peak threshold, as a fraction of the global maximum.
pub const DEFAULT_THRESHOLD: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Peak {
    pub nu1: f64,
    pub nu2: f64,
    pub value: f64,
    pub i: usize,
    pub j: usize,
}

/// Strict local maxima of |value| over the 8-neighbourhood that reach
/// `threshold`·max. Boundary nodes are never reported.
///
/// Requires the lattice spacing to be at most half the field's
/// `resolution_scale`.
pub fn find_peaks(field: &SpectralField2D, threshold: f64) -> Result<Vec<Peak>> {
    let g = &field.grid;
    let spacing = g.delta1().max(g.delta2());
    let required = 0.5 * field.resolution_scale;
    if spacing > required {
        return Err(Error::GridTooCoarse { spacing, required });
    }
    let mag = field.values.mapv(|v| v.norm());
    let max = mag.iter().fold(0.0f64, |m, &v| m.max(v));
    let (n1, n2) = mag.dim();
    let mut out = Vec::new();
    if max == 0.0 || n1 < 3 || n2 < 3 {
        return Ok(out);
    }
    let floor = threshold * max;
    for i in 1..n1 - 1 {
        for j in 1..n2 - 1 {
            let v = mag[[i, j]];
            if v < floor {
                continue;
            }
            let strict = (i - 1..=i + 1)
                .flat_map(|a| (j - 1..=j + 1).map(move |b| (a, b)))
                .filter(|&(a, b)| (a, b) != (i, j))
                .all(|(a, b)| v > mag[[a, b]]);
            if strict {
                out.push(Peak { nu1: g.nu1(i), nu2: g.nu2(j), value: v, i, j });
            }
        }
    }
    out.sort_by(|a, b| {
        b.value
            .total_cmp(&a.value)
            .then(a.nu1.total_cmp(&b.nu1))
            .then(a.nu2.total_cmp(&b.nu2))
    });
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetryReport {
    pub residual: f64,
    /// Mean of the detected peak coordinates.
    pub center: (f64, f64),
    pub peaks: usize,
}

/// Bilinear sample of |field| at fractional indices; `None` outside the lattice.
pub(crate) fn bilinear_abs(field: &SpectralField2D, x: f64, y: f64) -> Option<f64> {
    let (n1, n2) = field.values.dim();
    let tol = 1e-9;
    if x < -tol || y < -tol || x > (n1 - 1) as f64 + tol || y > (n2 - 1) as f64 + tol {
        return None;
    }
    let x = x.clamp(0.0, (n1 - 1) as f64);
    let y = y.clamp(0.0, (n2 - 1) as f64);
    let (i0, j0) = (x.floor() as usize, y.floor() as usize);
    let (fx, fy) = (x - i0 as f64, y - j0 as f64);
    let i1 = (i0 + 1).min(n1 - 1);
    let j1 = (j0 + 1).min(n2 - 1);
    let v = |i: usize, j: usize| field.values[[i, j]].norm();
    Some(
        v(i0, j0) * (1.0 - fx) * (1.0 - fy)
            + v(i1, j0) * fx * (1.0 - fy)
            + v(i0, j1) * (1.0 - fx) * fy
            + v(i1, j1) * fx * fy,
    )
}

/// max over lattice nodes p of ||v(p)| − |v(2c − p)|| / max|v|, with c the
/// peak centroid at threshold 0.5. Mirror points outside the lattice are
/// skipped.
pub fn central_symmetry_residual(field: &SpectralField2D) -> Result<SymmetryReport> {
    match field.quantity {
        Quantity::Chi5He | Quantity::Chi5PcrS1 | Quantity::Chi5PcrS2 | Quantity::Chi5PcrS3 => {}
        other => return Err(Error::WrongQuantity { expected: "chi5", found: other.as_str() }),
    }
    let peaks = find_peaks(field, DEFAULT_THRESHOLD)?;
    if peaks.is_empty() {
        return Err(Error::NoPeaks);
    }
    let k = peaks.len() as f64;
    let c1 = peaks.iter().map(|p| p.nu1).sum::<f64>() / k;
    let c2 = peaks.iter().map(|p| p.nu2).sum::<f64>() / k;
    let g = &field.grid;
    let (x0, y0) = (g.nu1(0), g.nu2(0));
    let (d1, d2) = (g.delta1(), g.delta2());
    // mirror of index i is 2·ci − i in index space
    let ci = (c1 - x0) / d1;
    let cj = (c2 - y0) / d2;
    let max = field.max_abs();
    let mut residual = 0.0f64;
    for ((i, j), v) in field.values.indexed_iter() {
        let mx = 2.0 * ci - i as f64;
        let my = 2.0 * cj - j as f64;
        if let Some(m) = bilinear_abs(field, mx, my) {
            residual = residual.max((v.norm() - m).abs());
        }
    }
    Ok(SymmetryReport { residual: residual / max, center: (c1, c2), peaks: peaks.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::grid::FrequencyGrid2D;
    use ndarray::Array2;
    use num_complex::Complex64;

    fn synthetic(f: impl Fn(f64, f64) -> f64, n: usize) -> SpectralField2D {
        let grid = FrequencyGrid2D::new(0.0, 16.0, n, 0.0, 16.0, n).unwrap();
        let values = Array2::from_shape_fn((n, n), |(i, j)| Complex64::new(f(grid.nu1(i), grid.nu2(j)), 0.0));
        SpectralField2D { grid, values, quantity: Quantity::Chi5He, scale: 1.0, resolution_scale: 1.0 }
    }

    #[test]
    fn constant_field_has_no_peaks() {
        let f = synthetic(|_, _| 3.0, 64);
        assert!(find_peaks(&f, 0.5).unwrap().is_empty());
    }

    #[test]
    fn finds_separated_bumps_in_order() {
        let bump = |x: f64, y: f64, a: f64, b: f64| (-((x - a).powi(2) + (y - b).powi(2))).exp();
        let f = synthetic(|x, y| bump(x, y, -3.0, 2.0) + 0.8 * bump(x, y, 4.0, -4.0) + 0.1 * bump(x, y, 0.0, 5.0), 64);
        let p = find_peaks(&f, 0.5).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!((p[0].nu1, p[0].nu2), (-3.0, 2.0));
        assert_eq!((p[1].nu1, p[1].nu2), (4.0, -4.0));
        assert_eq!(find_peaks(&f, 0.05).unwrap().len(), 3);
    }

    #[test]
    fn ties_break_by_coordinates() {
        // compact bumps so the three heights are exactly equal
        let bump = |x: f64, y: f64, a: f64, b: f64| (1.0 - ((x - a).powi(2) + (y - b).powi(2)) / 4.0).max(0.0);
        let f = synthetic(|x, y| bump(x, y, 3.0, 1.0) + bump(x, y, -3.0, 1.0) + bump(x, y, -3.0, -4.0), 64);
        let p = find_peaks(&f, 0.5).unwrap();
        let coords: Vec<_> = p.iter().map(|q| (q.nu1, q.nu2)).collect();
        assert_eq!(coords, vec![(-3.0, -4.0), (-3.0, 1.0), (3.0, 1.0)]);
    }

    #[test]
    fn coarse_grid_rejected() {
        let mut f = synthetic(|_, _| 1.0, 16);
        f.resolution_scale = 1.0;
        assert!(matches!(find_peaks(&f, 0.5), Err(Error::GridTooCoarse { .. })));
    }

    #[test]
    fn radial_field_is_exactly_symmetric() {
        // two mirrored bumps so the centroid is the lattice node (0, 0)
        let g = |x: f64, y: f64| {
            let r = (x * x + y * y).sqrt();
            (-(r - 3.0).powi(2)).exp() * (1.0 + 0.5 * (x / (r + 1e-9)))
                + (-(r - 3.0).powi(2)).exp() * (1.0 - 0.5 * (x / (r + 1e-9)))
        };
        let f = synthetic(move |x, y| g(x, y) + (-((x - 2.0).powi(2) + y * y)).exp() + (-((x + 2.0).powi(2) + y * y)).exp(), 64);
        let r = central_symmetry_residual(&f).unwrap();
        assert!(r.residual < 1e-12, "{r:?}");
    }

    #[test]
    fn rejects_non_chi5() {
        let mut f = synthetic(|x, y| (-(x * x + y * y)).exp(), 64);
        f.quantity = Quantity::Kernel;
        assert!(matches!(central_symmetry_residual(&f), Err(Error::WrongQuantity { .. })));
    }

    #[test]
    fn bilinear_is_exact_on_nodes_and_planes() {
        let f = synthetic(|x, y| 2.0 + 0.1 * x + 0.05 * y, 32);
        let g = &f.grid;
        let at = |x: f64, y: f64| 2.0 + 0.1 * (g.nu1(0) + x * g.delta1()) + 0.05 * (g.nu2(0) + y * g.delta2());
        for (x, y) in [(3.0, 4.0), (3.5, 7.25), (0.0, 31.0)] {
            assert!((bilinear_abs(&f, x, y).unwrap() - at(x, y)).abs() < 1e-12);
        }
        assert!(bilinear_abs(&f, 31.5, 0.0).is_none());
    }
}
