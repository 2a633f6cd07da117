//! Temporal-correlation regime from the competing bandwidths.

use serde::{Deserialize, Serialize};

use crate::params::SystemParams;
use crate::propagation::{delta_omega_sl_units, eit_metrics};
use crate::spectra::predicted_resonances;
use crate::Result;

pub const GROUP_DELAY_BELOW: f64 = 1.0 / 3.0;
pub const DAMPED_RABI_ABOVE: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    DampedRabi,
    GroupDelay,
    Hybrid,
}

impl Regime {
    pub fn from_ratio(rho: f64) -> Self {
        if rho < GROUP_DELAY_BELOW {
            Regime::GroupDelay
        } else if rho > DAMPED_RABI_ABOVE {
            Regime::DampedRabi
        } else {
            Regime::Hybrid
        }
    }
}

/// Bandwidths in rad/s; `rho` = min(Δω_tr, Δω_sl)/γe_min.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub regime: Regime,
    pub delta_omega_tr: f64,
    pub delta_omega_sl: f64,
    pub gamma_e_min: f64,
    pub ratio_tr: f64,
    pub ratio_sl: f64,
    pub rho: f64,
}

impl RegimeReport {
    pub fn from_bandwidths(delta_omega_tr: f64, delta_omega_sl: f64, gamma_e_min: f64) -> Self {
        let ratio_tr = delta_omega_tr / gamma_e_min;
        let ratio_sl = delta_omega_sl / gamma_e_min;
        let rho = ratio_tr.min(ratio_sl);
        Self {
            regime: Regime::from_ratio(rho),
            delta_omega_tr,
            delta_omega_sl,
            gamma_e_min,
            ratio_tr,
            ratio_sl,
            rho,
        }
    }

    /// Recomputes the classification from the stored bandwidths alone.
    pub fn recompute(&self) -> Self {
        Self::from_bandwidths(self.delta_omega_tr, self.delta_omega_sl, self.gamma_e_min)
    }
}

pub fn classify_regime(params: &SystemParams) -> Result<RegimeReport> {
    predicted_resonances(params)?;
    let m = eit_metrics(params)?;
    let unit = params.gamma31_si;
    debug_assert!((m.delta_omega_sl / unit - delta_omega_sl_units(params)).abs() <= 1e-9 * m.delta_omega_sl / unit);
    let gamma_e_min = params.gamma_e1().min(params.gamma_e2()) * unit;
    Ok(RegimeReport::from_bandwidths(m.omega_tr, m.delta_omega_sl, gamma_e_min))
}
