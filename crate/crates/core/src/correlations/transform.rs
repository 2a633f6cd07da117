//! Lattice Fourier transform of the kernel, ν → τ with the e^{+iντ} sign.
//!
//! On a lattice ν_k = ν₀ + kδν and τ_q = (q − n/2)·δτ with δτ = 2π/(nδν),
//!
//!   A(τ_q) = δν · e^{iν₀τ_q} · Σ_k K_k e^{2πi k (q − n/2)/n},
//!
//! i.e. an unnormalized inverse FFT followed by an fftshift and a phase ramp.

use std::sync::Arc;

use ndarray::Array2;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::exec::{for_each_row, for_each_row_with_scratch, Schedule};
use crate::spectra::grid::tau_axis;
use crate::spectra::{Quantity, SpectralField2D};
use crate::{Error, Result};

/// Kernel magnitude at the lattice edge above which a run warns.
pub const LEAKAGE_LIMIT: f64 = 1e-3;

/// Complex samples on a (τ₃₁, τ₃₂) lattice; row index τ₃₁.
#[derive(Clone, Debug, PartialEq)]
pub struct Amplitude2D {
    pub tau31: Vec<f64>,
    pub tau32: Vec<f64>,
    pub values: Array2<Complex64>,
}

impl Amplitude2D {
    pub fn dtau31(&self) -> f64 {
        self.tau31[1] - self.tau31[0]
    }

    pub fn dtau32(&self) -> f64 {
        self.tau32[1] - self.tau32[0]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.norm()))
    }

    /// Bilinear interpolation at (τ₃₁, τ₃₂); `None` outside the lattice.
    pub fn interpolate(&self, t31: f64, t32: f64) -> Option<Complex64> {
        let (n1, n2) = self.values.dim();
        let x = (t31 - self.tau31[0]) / self.dtau31();
        let y = (t32 - self.tau32[0]) / self.dtau32();
        let tol = 1e-9;
        if !(x >= -tol && y >= -tol && x <= (n1 - 1) as f64 + tol && y <= (n2 - 1) as f64 + tol) {
            return None;
        }
        let x = x.clamp(0.0, (n1 - 1) as f64);
        let y = y.clamp(0.0, (n2 - 1) as f64);
        let (i0, j0) = (x.floor() as usize, y.floor() as usize);
        let (i1, j1) = ((i0 + 1).min(n1 - 1), (j0 + 1).min(n2 - 1));
        let (fx, fy) = (x - i0 as f64, y - j0 as f64);
        let v = &self.values;
        Some(
            v[[i0, j0]] * ((1.0 - fx) * (1.0 - fy))
                + v[[i1, j0]] * (fx * (1.0 - fy))
                + v[[i0, j1]] * ((1.0 - fx) * fy)
                + v[[i1, j1]] * (fx * fy),
        )
    }
}

/// Precomputed inverse FFT plus the fftshift/phase-ramp post-processing for
/// one axis.
pub(crate) struct AxisTransform {
    fft: Arc<dyn Fft<f64>>,
    n: usize,
    /// δν·e^{iν₀τ_q}, indexed by output q.
    ramp: Vec<Complex64>,
}

impl AxisTransform {
    pub(crate) fn new(planner: &mut FftPlanner<f64>, n: usize, nu0: f64, dnu: f64) -> Self {
        let dtau = std::f64::consts::TAU / (n as f64 * dnu);
        let ramp = tau_axis(n, dtau)
            .into_iter()
            .map(|t| Complex64::from_polar(dnu, nu0 * t))
            .collect();
        Self { fft: planner.plan_fft_inverse(n), n, ramp }
    }

    pub(crate) fn scratch_len(&self) -> usize {
        // one extra n-long buffer for the shift
        self.fft.get_inplace_scratch_len() + self.n
    }

    /// Transforms `line` in place.
    pub(crate) fn apply(&self, line: &mut [Complex64], scratch: &mut [Complex64]) {
        let (fft_scratch, tmp) = scratch.split_at_mut(scratch.len() - self.n);
        self.fft.process_with_scratch(line, fft_scratch);
        let half = self.n / 2;
        for (q, t) in tmp.iter_mut().enumerate() {
            *t = line[(q + half) % self.n] * self.ramp[q];
        }
        line.copy_from_slice(tmp);
    }
}

fn transpose(schedule: Schedule, src: &[Complex64], rows: usize, cols: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); src.len()];
    for_each_row(schedule, &mut out, rows, |c, row| {
        for (r, v) in row.iter_mut().enumerate() {
            *v = src[r * cols + c];
        }
    });
    out
}

pub(crate) fn require_kernel(field: &SpectralField2D) -> Result<()> {
    if field.quantity != Quantity::Kernel {
        return Err(Error::WrongQuantity { expected: "kernel", found: field.quantity.as_str() });
    }
    Ok(())
}

pub(crate) fn warn_on_leakage(field: &SpectralField2D) {
    let edge = field.edge_ratio();
    if edge > LEAKAGE_LIMIT {
        log::warn!(
            "kernel at the grid edge is {edge:.2e} of its peak (limit {LEAKAGE_LIMIT:.0e}); \
             consider a larger span"
        );
    }
}

/// A₃(τ₃₁, τ₃₂) up to the dropped constant prefactor.
pub fn amplitude_a3(field: &SpectralField2D) -> Result<Amplitude2D> {
    amplitude_a3_with(field, Schedule::default())
}

pub fn amplitude_a3_with(field: &SpectralField2D, schedule: Schedule) -> Result<Amplitude2D> {
    require_kernel(field)?;
    warn_on_leakage(field);
    Ok(lattice_transform_2d(field, schedule))
}

/// The 2D transform without the kernel-tag check.
pub fn lattice_transform_2d(field: &SpectralField2D, schedule: Schedule) -> Amplitude2D {
    let g = &field.grid;
    let (n1, n2) = (g.n1, g.n2);
    let mut planner = FftPlanner::new();
    let t2 = AxisTransform::new(&mut planner, n2, g.nu2(0), g.delta2());
    let t1 = AxisTransform::new(&mut planner, n1, g.nu1(0), g.delta1());

    let mut data: Vec<Complex64> = field.values.iter().copied().collect();
    for_each_row_with_scratch(schedule, &mut data, n2, t2.scratch_len(), |row, s| t2.apply(row, s));
    let mut cols = transpose(schedule, &data, n1, n2);
    for_each_row_with_scratch(schedule, &mut cols, n1, t1.scratch_len(), |row, s| t1.apply(row, s));
    let data = transpose(schedule, &cols, n2, n1);

    Amplitude2D {
        tau31: g.tau1_axis(),
        tau32: g.tau2_axis(),
        values: Array2::from_shape_vec((n1, n2), data).expect("shape matches grid"),
    }
}

/// Transforms along one axis only; `axis` 1 maps ν₂ → τ₃₂ (rows), 0 maps
/// ν₁ → τ₃₁ (columns). The result keeps the field's (row, column) layout.
pub(crate) fn lattice_transform_axis(field: &SpectralField2D, axis: usize, schedule: Schedule) -> Array2<Complex64> {
    let g = &field.grid;
    let (n1, n2) = (g.n1, g.n2);
    let mut planner = FftPlanner::new();
    let data: Vec<Complex64> = field.values.iter().copied().collect();
    let out = if axis == 1 {
        let t = AxisTransform::new(&mut planner, n2, g.nu2(0), g.delta2());
        let mut data = data;
        for_each_row_with_scratch(schedule, &mut data, n2, t.scratch_len(), |row, s| t.apply(row, s));
        data
    } else {
        let t = AxisTransform::new(&mut planner, n1, g.nu1(0), g.delta1());
        let mut cols = transpose(schedule, &data, n1, n2);
        for_each_row_with_scratch(schedule, &mut cols, n1, t.scratch_len(), |row, s| t.apply(row, s));
        transpose(schedule, &cols, n2, n1)
    };
    Array2::from_shape_vec((n1, n2), out).expect("shape matches grid")
}

/// (Σ|A|²δτ₁δτ₂) / ((2π)²Σ|K|²δν₁δν₂); 1 for an exact transform pair.
pub fn parseval_ratio(field: &SpectralField2D, amp: &Amplitude2D) -> f64 {
    let g = &field.grid;
    let time: f64 = amp.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * amp.dtau31() * amp.dtau32();
    let freq: f64 = field.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * g.delta1() * g.delta2();
    time / (std::f64::consts::TAU * std::f64::consts::TAU * freq)
}
