//! Direct trapezoidal quadrature of the amplitude integral.
//!
//! Shares nothing with the FFT path except the kernel function itself, so it
//! serves as an independent check of the lattice transform.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::transform::Amplitude2D;
use crate::exec::{map_indices, Schedule};
use crate::params::SystemParams;
use crate::propagation::kernel;
use crate::spectra::{FrequencyGrid2D, SpectralField2D};

fn trapezoid_weights(n: usize, h: f64) -> Vec<f64> {
    (0..n).map(|k| if k == 0 || k == n - 1 { 0.5 * h } else { h }).collect()
}

/// ∬ K(ν₁,ν₂) e^{i(ν₁τ₃₁+ν₂τ₃₂)} dν₁dν₂ over the grid's node range, by the
/// trapezoidal rule on its nodes. Points outside the transform's τ lattice
/// come back as `None`.
///
/// The kernel carries `chi5_scale` (1 when unset), not the per-grid
/// normalization.
pub fn quadrature_a3(
    params: &SystemParams,
    points: &[(f64, f64)],
    grid: &FrequencyGrid2D,
    schedule: Schedule,
) -> Vec<Option<Complex64>> {
    quadrature_of(|a, b| kernel(params, a, b), points, grid, schedule)
}

/// Same rule for an arbitrary integrand.
pub fn quadrature_of<F>(f: F, points: &[(f64, f64)], grid: &FrequencyGrid2D, schedule: Schedule) -> Vec<Option<Complex64>>
where
    F: Fn(f64, f64) -> Complex64 + Sync + Send,
{
    let nu1 = grid.nu1_axis();
    let nu2 = grid.nu2_axis();
    let w1 = trapezoid_weights(grid.n1, grid.delta1());
    let w2 = trapezoid_weights(grid.n2, grid.delta2());
    let weighted: Vec<Complex64> = map_indices(schedule, grid.len(), |k| {
        let (i, j) = (k / grid.n2, k % grid.n2);
        f(nu1[i], nu2[j]) * (w1[i] * w2[j])
    });
    let t1 = grid.tau1_axis();
    let t2 = grid.tau2_axis();
    let in_range = |t: f64, axis: &[f64]| t >= axis[0] && t <= axis[axis.len() - 1];

    map_indices(schedule, points.len(), |p| {
        let (a, b) = points[p];
        if !(in_range(a, &t1) && in_range(b, &t2)) {
            return None;
        }
        let e1: Vec<Complex64> = nu1.iter().map(|&v| Complex64::from_polar(1.0, v * a)).collect();
        let e2: Vec<Complex64> = nu2.iter().map(|&v| Complex64::from_polar(1.0, v * b)).collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, row) in weighted.chunks(grid.n2).enumerate() {
            let mut inner = Complex64::new(0.0, 0.0);
            for (k, e) in row.iter().zip(&e2) {
                inner += k * e;
            }
            acc += inner * e1[i];
        }
        Some(acc)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleRow {
    pub tau31: f64,
    pub tau32: f64,
    pub transform: Complex64,
    pub quadrature: Complex64,
    /// |quadrature − transform| / max|transform|.
    pub deviation: f64,
}

/// Compares the transform with quadrature at `k` seeded probe points drawn
/// from lattice nodes in the interior half of each τ axis.
pub fn oracle_check(
    params: &SystemParams,
    field: &SpectralField2D,
    amp: &Amplitude2D,
    k: usize,
    seed: u64,
    schedule: Schedule,
) -> Vec<OracleRow> {
    let (n1, n2) = amp.values.dim();
    let mut rng = StdRng::seed_from_u64(seed);
    let probes: Vec<(usize, usize)> = (0..k)
        .map(|_| (rng.random_range(n1 / 4..3 * n1 / 4), rng.random_range(n2 / 4..3 * n2 / 4)))
        .collect();
    let points: Vec<(f64, f64)> = probes.iter().map(|&(i, j)| (amp.tau31[i], amp.tau32[j])).collect();
    let quad = quadrature_a3(params, &points, &field.grid, schedule);
    let scale = if params.options.chi5_scale.is_none() { field.scale } else { 1.0 };
    let max = amp.max_abs();
    points
        .iter()
        .zip(quad)
        .map(|(&(a, b), q)| {
            let t = amp.interpolate(a, b).expect("probe lies on the lattice");
            let q = q.expect("probe lies on the lattice") * scale;
            OracleRow { tau31: a, tau32: b, transform: t, quadrature: q, deviation: (q - t).norm() / max }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::load_preset;
    use crate::spectra::{evaluate, Quantity};

    #[test]
    fn constant_integrand_gives_node_area() {
        let g = FrequencyGrid2D::new(-100.0, 40.0, 64, 100.0, 20.0, 32).unwrap();
        let r = quadrature_of(|_, _| Complex64::new(1.0, 0.0), &[(0.0, 0.0)], &g, Schedule::Sequential);
        // the trapezoid spans first to last node: (n−1)δν per axis
        let area = (g.nu1_span - g.delta1()) * (g.nu2_span - g.delta2());
        assert!((r[0].unwrap() - Complex64::new(area, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn out_of_range_flagged() {
        let p = load_preset("fig3a").unwrap();
        let g = FrequencyGrid2D::new(-100.0, 40.0, 16, 100.0, 40.0, 16).unwrap();
        let t = g.tau1_axis();
        let r = quadrature_a3(&p.params, &[(0.0, 0.0), (t[0] - 1.0, 0.0), (0.0, 1e6)], &g, Schedule::Sequential);
        assert!(r[0].is_some() && r[1].is_none() && r[2].is_none());
    }

    #[test]
    fn agrees_with_transform_on_small_grid() {
        let p = load_preset("fig3a").unwrap().params;
        let g = FrequencyGrid2D::new(-100.0, 80.0, 128, 100.0, 80.0, 128).unwrap();
        let field = evaluate(Quantity::Kernel, &p, &g).unwrap();
        let amp = crate::correlations::amplitude_a3(&field).unwrap();
        let rows = oracle_check(&p, &field, &amp, 4, 7, Schedule::Sequential);
        for r in rows {
            assert!(r.deviation < 1e-2, "{r:?}");
        }
    }
}
