//! Shape measurements on R₃ surfaces and R₂ traces.

use serde::Serialize;

use super::{ConditionalTrace, CorrelationSurface};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiagonalSupport {
    /// Mass fraction with τ₃₁ > τ₃₂.
    pub above: f64,
    /// Mass fraction with τ₃₁ < τ₃₂.
    pub below: f64,
    /// Mass fraction within 3δτ of the τ₃₁ = τ₃₂ diagonal.
    pub diagonal_band: f64,
    /// Mass fraction within 3δτ of the τ₃₁ = −τ₃₂ anti-diagonal.
    pub antidiagonal_band: f64,
}

pub fn diagonal_support_metric(surface: &CorrelationSurface) -> DiagonalSupport {
    let t1 = &surface.tau31_axis;
    let t2 = &surface.tau32_axis;
    let band = 3.0 * (t1[1] - t1[0]).max(t2[1] - t2[0]);
    let (mut total, mut above, mut below, mut diag, mut anti) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for ((i, j), &v) in surface.r3.indexed_iter() {
        let (a, b) = (t1[i], t2[j]);
        total += v;
        if a > b {
            above += v;
        } else if a < b {
            below += v;
        }
        if (a - b).abs() < band {
            diag += v;
        }
        if (a + b).abs() < band {
            anti += v;
        }
    }
    if total == 0.0 {
        return DiagonalSupport { above: 0.0, below: 0.0, diagonal_band: 0.0, antidiagonal_band: 0.0 };
    }
    DiagonalSupport {
        above: above / total,
        below: below / total,
        diagonal_band: diag / total,
        antidiagonal_band: anti / total,
    }
}

/// Shortest τ interval holding a fraction 1 − e⁻¹ of the trace's mass
/// (T for a one-sided e^{−τ/T}).
pub fn coherence_extent(trace: &ConditionalTrace) -> f64 {
    let r = &trace.r2;
    let dt = trace.dtau();
    let total: f64 = r.iter().sum();
    if total == 0.0 {
        return 0.0;
    }
    let need = (1.0 - (-1.0f64).exp()) * total;
    let mut best = f64::INFINITY;
    let mut lo = 0;
    let mut acc = 0.0;
    for hi in 0..r.len() {
        acc += r[hi];
        while lo < hi && acc - r[lo] >= need {
            acc -= r[lo];
            lo += 1;
        }
        if acc >= need && r[hi] > 0.0 {
            // the window's last sample is only partly needed
            let partial = ((need - (acc - r[hi])) / r[hi]).clamp(0.0, 1.0);
            best = best.min((hi - lo) as f64 * dt + partial * dt);
        }
    }
    best
}

/// Mean spacing of the first five local maxima of R₂, starting from the
/// global maximum and walking toward the side holding more mass.
pub fn oscillation_period(trace: &ConditionalTrace) -> Result<f64> {
    let r = &trace.r2;
    let n = r.len();
    let (start, max) = r.iter().enumerate().fold((0, f64::NEG_INFINITY), |b, (i, &v)| if v > b.1 { (i, v) } else { b });
    let left: f64 = r[..start].iter().sum();
    let right: f64 = r[start + 1..].iter().sum();
    let forward = right >= left;
    let floor = 1e-6 * max;
    let refine = |i: usize| -> f64 {
        let (a, b, c) = (r[i - 1], r[i], r[i + 1]);
        let den = a - 2.0 * b + c;
        let off = if den != 0.0 { 0.5 * (a - c) / den } else { 0.0 };
        trace.tau_axis[i] + off * trace.dtau()
    };
    let mut maxima = Vec::new();
    if start > 0 && start < n - 1 {
        maxima.push(refine(start));
    } else {
        maxima.push(trace.tau_axis[start]);
    }
    let mut i = start;
    while maxima.len() < 5 {
        i = if forward {
            if i + 2 >= n {
                break;
            }
            i + 1
        } else {
            if i < 2 {
                break;
            }
            i - 1
        };
        if r[i] > r[i - 1] && r[i] > r[i + 1] && r[i] > floor {
            maxima.push(refine(i));
        }
    }
    if maxima.len() < 3 {
        return Err(Error::NoPeaks);
    }
    let span = (maxima[maxima.len() - 1] - maxima[0]).abs();
    Ok(span / (maxima.len() - 1) as f64)
}
