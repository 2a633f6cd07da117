//! Phase matching, slow light and EIT absorption.

use num_complex::Complex64;
use serde::Serialize;

use crate::params::SystemParams;
use crate::response::{chi5_he, chi_s3_shape_im};
use crate::{Error, Result, SPEED_OF_LIGHT};

/// Half-power argument of |sinc|²: sinc²(1.39) ≈ 1/2.
pub const SINC_HALF_POWER_ARG: f64 = 1.39;

const SERIES_RADIUS: f64 = 1e-6;

/// Φ(x) = sinc(x)·e^{−ix}.
pub fn phi(x: Complex64) -> Complex64 {
    if x.norm() < SERIES_RADIUS {
        phi_series(x)
    } else {
        phi_direct(x)
    }
}

/// Truncated Taylor form (1 − x²/6 + x⁴/120)·e^{−ix}.
pub fn phi_series(x: Complex64) -> Complex64 {
    let x2 = x * x;
    (1.0 - x2 / 6.0 + x2 * x2 / 120.0) * (-Complex64::i() * x).exp()
}

/// Closed form, valid for x ≠ 0.
pub fn phi_direct(x: Complex64) -> Complex64 {
    let i = Complex64::i();
    if x.norm() < 1.0 {
        x.sin() / x * (-i * x).exp()
    } else {
        // sin(x)e^{−ix} = (1 − e^{−2ix})/(2i); avoids overflowing sin for large |Im x|
        (1.0 - (-2.0 * i * x).exp()) / (2.0 * i * x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EitMetrics {
    /// Group velocity of the ω_s3 photon, m/s.
    pub v3: f64,
    /// Transparency window, rad/s.
    pub omega_tr: f64,
    /// L/v3, s.
    pub delay: f64,
    /// Half-power width of |sinc(ΔkL/2)|² in ν₁+ν₂, rad/s.
    pub delta_omega_sl: f64,
}

impl EitMetrics {
    pub fn omega_tr_units(&self, p: &SystemParams) -> f64 {
        self.omega_tr / p.gamma31_si
    }

    pub fn delta_omega_sl_units(&self, p: &SystemParams) -> f64 {
        self.delta_omega_sl / p.gamma31_si
    }
}

/// Transparency window in γ31 units.
pub fn omega_tr_units(p: &SystemParams) -> f64 {
    let root = (8.0 * p.optical_depth).sqrt();
    if p.options.literal_omega_tr {
        p.omega_c2.norm() / (p.gamma_31 * root)
    } else {
        p.omega_c2_sq() / (p.gamma_31 * root)
    }
}

/// Slow-light bandwidth 2·1.39·v3/L in γ31 units.
pub fn delta_omega_sl_units(p: &SystemParams) -> f64 {
    2.0 * SINC_HALF_POWER_ARG / slowness_units(p)
}

/// L/v3 in 1/γ31 units: OD·γ31/|Ωc2|².
fn slowness_units(p: &SystemParams) -> f64 {
    let w = p.omega_c2_sq();
    if w == 0.0 {
        0.0
    } else {
        p.optical_depth * p.gamma_31 / w
    }
}

pub fn eit_metrics(p: &SystemParams) -> Result<EitMetrics> {
    let w = p.omega_c2_sq();
    if w == 0.0 {
        return Err(Error::NoEitChannel);
    }
    let v3 = w * p.gamma31_si * p.length_l / (p.gamma_31 * p.optical_depth);
    if v3 >= SPEED_OF_LIGHT {
        return Err(Error::NotSlowLight { v3 });
    }
    Ok(EitMetrics {
        v3,
        omega_tr: omega_tr_units(p) * p.gamma31_si,
        delay: p.length_l / v3,
        delta_omega_sl: 2.0 * SINC_HALF_POWER_ARG * v3 / p.length_l,
    })
}

/// ΔkL/2 (dimensionless) for ν₁+ν₂ = `s` in γ31 units.
///
/// The absorption term enters with the sign that attenuates the mode under
/// the Im χs3 > 0 convention of [`crate::response::chi_s3_he`]. Without an
/// EIT channel the group-delay term is dropped.
pub fn phase_argument(p: &SystemParams, s: f64) -> Complex64 {
    let absorb = if p.options.halve_absorption { 0.125 } else { 0.25 };
    let re = 0.5 * p.k_offset * p.length_l - 0.5 * s * slowness_units(p);
    let im = -absorb * p.optical_depth * p.gamma_31 * chi_s3_shape_im(p, s);
    Complex64::new(re, im)
}

/// Longitudinal mismatch Δk in 1/m.
pub fn delta_k(p: &SystemParams, nu1: f64, nu2: f64) -> Complex64 {
    phase_argument(p, nu1 + nu2) * (2.0 / p.length_l)
}

/// χ⁽⁵⁾(ν₁, ν₂)·Φ(ΔkL/2).
pub fn kernel(p: &SystemParams, nu1: f64, nu2: f64) -> Complex64 {
    chi5_he(p, nu1, nu2) * phi(phase_argument(p, nu1 + nu2))
}
