//! Closed-form dressed-state resonance positions.

use serde::Serialize;

use crate::params::SystemParams;
use crate::{Error, Result};

/// All values in γ31 units.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResonancePrediction {
    pub omega_e1: f64,
    pub omega_e2: f64,
    pub gamma_e1: f64,
    pub gamma_e2: f64,
    pub nu1_peaks: [f64; 2],
    pub nu2_peaks: [f64; 4],
    /// (ν₁, ν₂, ν₃) for pathways (i)–(iv).
    pub pathways: [[f64; 3]; 4],
}

impl ResonancePrediction {
    /// (Δp, −Δp): the centre of the four-pathway pattern.
    pub fn analytic_center(params: &SystemParams) -> (f64, f64) {
        (params.delta_p, -params.delta_p)
    }
}

fn split(transition: &'static str, omega_sq: f64, ga: f64, gb: f64) -> Result<f64> {
    let radicand = 4.0 * omega_sq - (ga - gb) * (ga - gb);
    if radicand <= 0.0 {
        return Err(Error::Overdamped { transition, radicand });
    }
    Ok(radicand.sqrt())
}

/// Pathway resonances for the Δc1 ≈ 0 case.
pub fn predicted_resonances(p: &SystemParams) -> Result<ResonancePrediction> {
    let omega_e1 = split("pump/coupling-1", p.omega_c1_sq(), p.gamma_41, p.gamma_51)?;
    let omega_e2 = split("coupling-2", p.omega_c2_sq(), p.gamma_31, p.gamma_21)?;
    let (h1, h2) = (0.5 * omega_e1, 0.5 * omega_e2);
    let dp = p.delta_p;
    let nu1_peaks = [dp - h1, dp + h1];
    let nu2_peaks = [-dp + h1 - h2, -dp + h1 + h2, -dp - h1 - h2, -dp - h1 + h2];
    let triple = |nu1: f64, nu2: f64| [nu1, nu2, -(nu1 + nu2)];
    let pathways = [
        triple(nu1_peaks[0], nu2_peaks[0]),
        triple(nu1_peaks[0], nu2_peaks[1]),
        triple(nu1_peaks[1], nu2_peaks[2]),
        triple(nu1_peaks[1], nu2_peaks[3]),
    ];
    Ok(ResonancePrediction {
        omega_e1,
        omega_e2,
        gamma_e1: p.gamma_e1(),
        gamma_e2: p.gamma_e2(),
        nu1_peaks,
        nu2_peaks,
        pathways,
    })
}
