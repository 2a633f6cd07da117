//! Uniform (ν₁, ν₂) sampling lattices.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::params::SystemParams;
use crate::{Error, Result};

/// Largest per-axis size chosen by [`auto_grid`].
pub const AUTO_AXIS_CAP: usize = 4096;
/// Default cap on n1·n2 for grid evaluation.
pub const DEFAULT_MAX_POINTS: usize = 1 << 24;

/// Sample k of an axis sits at `center − span/2 + k·span/n`; row index is ν₁,
/// column index is ν₂.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrequencyGrid2D {
    pub nu1_center: f64,
    pub nu1_span: f64,
    pub n1: usize,
    pub nu2_center: f64,
    pub nu2_span: f64,
    pub n2: usize,
}

fn check_axis(name: &str, center: f64, span: f64, n: usize) -> Result<()> {
    if !center.is_finite() || !(span.is_finite() && span > 0.0) {
        return Err(Error::InvalidGrid(format!(
            "{name} axis needs a finite center and positive span (got {center}, {span})"
        )));
    }
    if n < 4 || !n.is_power_of_two() {
        return Err(Error::InvalidGrid(format!(
            "{name} axis size must be a power of two ≥ 4, got {n}"
        )));
    }
    Ok(())
}

impl FrequencyGrid2D {
    pub fn new(
        nu1_center: f64,
        nu1_span: f64,
        n1: usize,
        nu2_center: f64,
        nu2_span: f64,
        n2: usize,
    ) -> Result<Self> {
        let g = Self { nu1_center, nu1_span, n1, nu2_center, nu2_span, n2 };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        check_axis("nu1", self.nu1_center, self.nu1_span, self.n1)?;
        check_axis("nu2", self.nu2_center, self.nu2_span, self.n2)
    }

    pub fn len(&self) -> usize {
        self.n1 * self.n2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn delta1(&self) -> f64 {
        self.nu1_span / self.n1 as f64
    }

    pub fn delta2(&self) -> f64 {
        self.nu2_span / self.n2 as f64
    }

    pub fn nu1(&self, i: usize) -> f64 {
        self.nu1_center - 0.5 * self.nu1_span + i as f64 * self.delta1()
    }

    pub fn nu2(&self, j: usize) -> f64 {
        self.nu2_center - 0.5 * self.nu2_span + j as f64 * self.delta2()
    }

    pub fn nu1_axis(&self) -> Vec<f64> {
        (0..self.n1).map(|i| self.nu1(i)).collect()
    }

    pub fn nu2_axis(&self) -> Vec<f64> {
        (0..self.n2).map(|j| self.nu2(j)).collect()
    }

    /// Conjugate time step 2π/span along τ₃₁.
    pub fn dtau1(&self) -> f64 {
        TAU / self.nu1_span
    }

    pub fn dtau2(&self) -> f64 {
        TAU / self.nu2_span
    }

    /// τ₃₁ lattice (q − n1/2)·δτ₁, q = 0..n1.
    pub fn tau1_axis(&self) -> Vec<f64> {
        tau_axis(self.n1, self.dtau1())
    }

    pub fn tau2_axis(&self) -> Vec<f64> {
        tau_axis(self.n2, self.dtau2())
    }

    /// Same lattice with both axis sizes multiplied by `factor` (spans kept).
    pub fn refined(&self, factor: usize) -> Result<Self> {
        Self::new(
            self.nu1_center,
            self.nu1_span,
            self.n1 * factor,
            self.nu2_center,
            self.nu2_span,
            self.n2 * factor,
        )
    }
}

pub(crate) fn tau_axis(n: usize, dtau: f64) -> Vec<f64> {
    let half = (n / 2) as f64;
    (0..n).map(|q| (q as f64 - half) * dtau).collect()
}

/// Both roots u of (a − iu)(b − iu) + w = 0.
fn pole_pair(a: Complex64, b: Complex64, w: f64) -> [Complex64; 2] {
    // −u² − i(a+b)u + ab + w = 0
    let i = Complex64::i();
    let sum = a + b;
    let disc = (-(sum * sum) + 4.0 * (a * b + w)).sqrt();
    [(-i * sum + disc) * 0.5, (-i * sum - disc) * 0.5]
}

/// Sizes a square-cell grid that covers every pole of the dressed
/// susceptibility with a margin of 10·max(γe1, γe2) and samples at most
/// min(γe1, γe2)/4 per cell.
pub fn auto_grid(params: &SystemParams) -> Result<FrequencyGrid2D> {
    let gp = |v: f64| Complex64::new(0.0, v);
    let a = gp(params.delta_p) - params.gamma_41;
    let b = gp(params.delta_p + params.delta_c1) - params.gamma_51;
    let nu1_poles = pole_pair(a, b, params.omega_c1_sq());
    let p = Complex64::new(-params.gamma_21, 0.0);
    let q = gp(params.delta_c2) - params.gamma_31;
    let s_poles = pole_pair(p, q, params.omega_c2_sq());

    let nu1_re: Vec<f64> = nu1_poles.iter().map(|u| u.re).collect();
    let nu2_re: Vec<f64> = s_poles
        .iter()
        .flat_map(|s| nu1_re.iter().map(move |u| s.re - u))
        .collect();

    let g_max = params.gamma_e1().max(params.gamma_e2());
    let g_min = params.gamma_e1().min(params.gamma_e2());
    let margin = 10.0 * g_max;
    let bounds = |v: &[f64]| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min) - margin;
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max) + margin;
        (0.5 * (lo + hi), hi - lo)
    };
    let (c1, w1) = bounds(&nu1_re);
    let (c2, w2) = bounds(&nu2_re);

    let mut h = g_min / 4.0;
    let widest = w1.max(w2);
    if widest / h > AUTO_AXIS_CAP as f64 {
        h = widest / AUTO_AXIS_CAP as f64;
    }
    let size = |w: f64| ((w / h).ceil() as usize).next_power_of_two().max(4);
    let (n1, n2) = (size(w1), size(w2));
    if n1 * n2 > DEFAULT_MAX_POINTS {
        return Err(Error::GridTooLarge { points: n1 * n2, cap: DEFAULT_MAX_POINTS });
    }
    FrequencyGrid2D::new(c1, n1 as f64 * h, n1, c2, n2 as f64 * h, n2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::load_preset;

    #[test]
    fn lattice_layout() {
        let g = FrequencyGrid2D::new(-100.0, 80.0, 512, 100.0, 120.0, 512).unwrap();
        assert_eq!(g.nu1(0), -140.0);
        assert_eq!(g.nu1(256), -100.0);
        assert_eq!(g.nu2(256), 100.0);
        assert_eq!(g.delta1(), 80.0 / 512.0);
        let t = g.tau1_axis();
        assert_eq!(t[256], 0.0);
        assert!((t[257] - TAU / 80.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_sizes() {
        for n in [0, 1, 2, 3, 6, 500] {
            let e = FrequencyGrid2D::new(0.0, 1.0, n, 0.0, 1.0, 8).unwrap_err();
            assert!(matches!(e, Error::InvalidGrid(_)));
        }
        assert!(FrequencyGrid2D::new(0.0, 0.0, 8, 0.0, 1.0, 8).is_err());
        assert!(FrequencyGrid2D::new(f64::NAN, 1.0, 8, 0.0, 1.0, 8).is_err());
    }

    #[test]
    fn pole_pair_solves_quadratic() {
        let a = Complex64::new(-1.0, -100.0);
        let b = Complex64::new(-0.2, 3.0);
        let w = 25.0;
        for u in pole_pair(a, b, w) {
            let i = Complex64::i();
            let r = (a - i * u) * (b - i * u) + w;
            assert!(r.norm() < 1e-9, "{r}");
        }
    }

    #[test]
    fn auto_grid_covers_resonances_with_square_cells() {
        for name in ["figS2a", "figS2b", "figS2c", "figS2d", "figS2e", "figS2f", "fig2b"] {
            let p = load_preset(name).unwrap();
            let g = &p.grid;
            assert!((g.delta1() - g.delta2()).abs() < 1e-12, "{name}");
            let gmin = p.params.gamma_e1().min(p.params.gamma_e2());
            assert!(g.delta1() <= gmin / 4.0 + 1e-12, "{name}");
            let lo1 = g.nu1(0);
            let hi1 = g.nu1(g.n1 - 1);
            let om1 = p.params.omega_c1.norm();
            assert!(lo1 < p.params.delta_p - om1 && hi1 > p.params.delta_p + om1, "{name}");
        }
    }
}
