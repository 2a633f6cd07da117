//! Three-photon amplitude, coincidence rates and their diagnostics.

pub mod metrics;
pub mod quadrature;
pub mod regime;
pub mod transform;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::exec::Schedule;
use crate::params::SystemParams;
use crate::spectra::{evaluate_with, FrequencyGrid2D, Quantity, SpectralField2D, DEFAULT_MAX_POINTS};
use crate::Result;

pub use metrics::{coherence_extent, diagonal_support_metric, oscillation_period, DiagonalSupport};
pub use quadrature::{oracle_check, quadrature_a3, quadrature_of, OracleRow};
pub use regime::{classify_regime, Regime, RegimeReport};
pub use transform::{amplitude_a3, amplitude_a3_with, parseval_ratio, Amplitude2D};

/// R₃ on the (τ₃₁, τ₃₂) lattice; row index τ₃₁.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationSurface {
    pub tau31_axis: Vec<f64>,
    pub tau32_axis: Vec<f64>,
    pub r3: Array2<f64>,
    /// Product of all maxima divided out so far.
    pub normalization: f64,
}

impl CorrelationSurface {
    /// |A₃|², not normalized.
    pub fn from_amplitude(amp: &Amplitude2D) -> Self {
        Self {
            tau31_axis: amp.tau31.clone(),
            tau32_axis: amp.tau32.clone(),
            r3: amp.values.mapv(|v| v.norm_sqr()),
            normalization: 1.0,
        }
    }

    pub fn normalized(&self) -> Self {
        let max = self.r3.iter().fold(0.0f64, |m, &v| m.max(v));
        if max == 0.0 || max == 1.0 {
            return self.clone();
        }
        Self {
            tau31_axis: self.tau31_axis.clone(),
            tau32_axis: self.tau32_axis.clone(),
            r3: self.r3.mapv(|v| v / max),
            normalization: self.normalization * max,
        }
    }
}

/// Which photon the conditional rate is traced over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Traced {
    S1,
    S2,
}

impl Traced {
    pub fn as_str(self) -> &'static str {
        match self {
            Traced::S1 => "s1",
            Traced::S2 => "s2",
        }
    }
}

/// R₂ against τ₃₂ (traced over s1) or τ₃₁ (traced over s2).
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionalTrace {
    pub tau_axis: Vec<f64>,
    pub r2: Vec<f64>,
    pub traced_over: Traced,
    pub normalization: f64,
}

impl ConditionalTrace {
    pub fn dtau(&self) -> f64 {
        self.tau_axis[1] - self.tau_axis[0]
    }

    pub fn normalized(&self) -> Self {
        let max = self.r2.iter().fold(0.0f64, |m, &v| m.max(v));
        if max == 0.0 || max == 1.0 {
            return self.clone();
        }
        Self {
            tau_axis: self.tau_axis.clone(),
            r2: self.r2.iter().map(|v| v / max).collect(),
            traced_over: self.traced_over,
            normalization: self.normalization * max,
        }
    }
}

/// Unnormalized R₂ from a kernel field.
///
/// Traced over s1: R₂(τ₃₂) = Σ_ν₁ |Σ_ν₂ K e^{iν₂τ₃₂} δν₂|² δν₁; traced over
/// s2 swaps the roles of the axes.
pub fn conditional_from_field(field: &SpectralField2D, traced_over: Traced, schedule: Schedule) -> Result<ConditionalTrace> {
    transform::require_kernel(field)?;
    transform::warn_on_leakage(field);
    let g = &field.grid;
    let (axis, tau_axis, weight) = match traced_over {
        Traced::S1 => (1, g.tau2_axis(), g.delta1()),
        Traced::S2 => (0, g.tau1_axis(), g.delta2()),
    };
    let a2 = transform::lattice_transform_axis(field, axis, schedule);
    let mut r2 = vec![0.0; tau_axis.len()];
    // fixed summation order: outer index ascending
    match traced_over {
        Traced::S1 => {
            for row in a2.rows() {
                for (acc, v) in r2.iter_mut().zip(row.iter()) {
                    *acc += v.norm_sqr();
                }
            }
        }
        Traced::S2 => {
            for (i, row) in a2.rows().into_iter().enumerate() {
                r2[i] = row.iter().map(|v| v.norm_sqr()).sum();
            }
        }
    }
    for v in &mut r2 {
        *v *= weight;
    }
    Ok(ConditionalTrace { tau_axis, r2, traced_over, normalization: 1.0 })
}

fn kernel_field(params: &SystemParams, grid: &FrequencyGrid2D, schedule: Schedule) -> Result<SpectralField2D> {
    evaluate_with(Quantity::Kernel, params, grid, schedule, DEFAULT_MAX_POINTS)
}

/// Normalized R₃ = |A₃|².
pub fn r3(params: &SystemParams, grid: &FrequencyGrid2D) -> Result<CorrelationSurface> {
    let field = kernel_field(params, grid, Schedule::default())?;
    Ok(CorrelationSurface::from_amplitude(&amplitude_a3(&field)?).normalized())
}

/// Normalized conditional R₂.
pub fn r2_conditional(params: &SystemParams, grid: &FrequencyGrid2D, traced_over: Traced) -> Result<ConditionalTrace> {
    let field = kernel_field(params, grid, Schedule::default())?;
    Ok(conditional_from_field(&field, traced_over, Schedule::default())?.normalized())
}

/// Everything the correlations command reports, from one kernel evaluation.
#[derive(Clone, Debug)]
pub struct CorrelationRun {
    pub field: SpectralField2D,
    pub amplitude: Amplitude2D,
    pub surface: CorrelationSurface,
    pub r2_tau32: ConditionalTrace,
    pub r2_tau31: ConditionalTrace,
}

pub fn run(params: &SystemParams, grid: &FrequencyGrid2D, schedule: Schedule) -> Result<CorrelationRun> {
    let field = kernel_field(params, grid, schedule)?;
    let amplitude = amplitude_a3_with(&field, schedule)?;
    let surface = CorrelationSurface::from_amplitude(&amplitude).normalized();
    let r2_tau32 = conditional_from_field(&field, Traced::S1, schedule)?.normalized();
    let r2_tau31 = conditional_from_field(&field, Traced::S2, schedule)?.normalized();
    Ok(CorrelationRun { field, amplitude, surface, r2_tau32, r2_tau31 })
}
