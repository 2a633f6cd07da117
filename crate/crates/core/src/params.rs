//! Physical parameters of the five-level scheme and the shipped presets.
//!
//! All rates, detunings and Rabi frequencies are in units of γ31; the SI
//! value of that unit is carried alongside as `gamma31_si` (rad/s).

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::spectra::grid::{auto_grid, FrequencyGrid2D};
use crate::{Error, Result, SPEED_OF_LIGHT};

/// γ31 = 2π × 3 MHz.
pub const DEFAULT_GAMMA31_SI: f64 = TAU * 3.0e6;
/// Carrier of the ω_s3 photon (≈ 780 nm).
pub const DEFAULT_CENTRAL_FREQ_S3: f64 = 2.42e15;
pub const DEFAULT_LENGTH_M: f64 = 0.015;

/// Switches for the conventions the model leaves open.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelOptions {
    /// Overall χ5 prefactor. `None` normalizes evaluated χ5 fields to unit peak.
    pub chi5_scale: Option<f64>,
    /// Use Π51*, Ξ*, D* in χ5 (literal form); `false` drops the conjugates.
    pub conjugate_chi5: bool,
    /// Absorption term ϖ Im χ/(2c) instead of ϖ Im χ/c.
    pub halve_absorption: bool,
    /// Transparency window as |Ωc2|/√(8 OD) rather than |Ωc2|²/(γ31 √(8 OD)).
    pub literal_omega_tr: bool,
}

impl Default for ModelOptions {
    fn default() -> Self {
        Self {
            chi5_scale: None,
            conjugate_chi5: true,
            halve_absorption: false,
            literal_omega_tr: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemParams {
    /// SI value of the frequency unit γ31, rad/s.
    pub gamma31_si: f64,
    pub gamma_21: f64,
    pub gamma_31: f64,
    pub gamma_32: f64,
    pub gamma_41: f64,
    pub gamma_42: f64,
    pub gamma_43: f64,
    pub gamma_51: f64,
    pub gamma_52: f64,
    pub gamma_53: f64,
    pub gamma_54: f64,
    /// Population decay of |2⟩, only used by the chain-rule χ5 through |2⟩.
    pub gamma_22: f64,
    /// Population decay of |4⟩, only used by the chain-rule χ5 through |4⟩.
    pub gamma_44: f64,
    /// Δp = ω41 − ωp.
    pub delta_p: f64,
    pub delta_c1: f64,
    pub delta_c2: f64,
    pub omega_c1: Complex64,
    pub omega_c2: Complex64,
    /// Medium length, m.
    pub length_l: f64,
    pub optical_depth: f64,
    /// ϖ_s3, rad/s.
    pub central_freq_s3: f64,
    /// Residual constant phase mismatch, 1/m.
    pub k_offset: f64,
    #[serde(default)]
    pub options: ModelOptions,
}

impl SystemParams {
    /// Builds a parameter set from the four captioned rates; every other
    /// dephasing rate is (γm1 + γn1)/2 and γmm = γm1.
    pub fn with_default_dephasing(gamma_21: f64, gamma_31: f64, gamma_41: f64, gamma_51: f64) -> Self {
        let g = [0.0, 0.0, gamma_21, gamma_31, gamma_41, gamma_51];
        let mix = |m: usize, n: usize| 0.5 * (g[m] + g[n]);
        Self {
            gamma31_si: DEFAULT_GAMMA31_SI,
            gamma_21,
            gamma_31,
            gamma_32: mix(3, 2),
            gamma_41,
            gamma_42: mix(4, 2),
            gamma_43: mix(4, 3),
            gamma_51,
            gamma_52: mix(5, 2),
            gamma_53: mix(5, 3),
            gamma_54: mix(5, 4),
            gamma_22: gamma_21,
            gamma_44: gamma_41,
            delta_p: 0.0,
            delta_c1: 0.0,
            delta_c2: 0.0,
            omega_c1: Complex64::new(0.0, 0.0),
            omega_c2: Complex64::new(0.0, 0.0),
            length_l: DEFAULT_LENGTH_M,
            optical_depth: 1.0,
            central_freq_s3: DEFAULT_CENTRAL_FREQ_S3,
            k_offset: 0.0,
            options: ModelOptions::default(),
        }
    }

    /// The common base of every captioned figure: γ41 = γ31, γ51 = 0.2γ31,
    /// γ21 = 0.04γ31, Δc2 = 0, Δp = −2π × 300 MHz, L = 1.5 cm.
    pub fn figure_base() -> Self {
        let mut p = Self::with_default_dephasing(0.04, 1.0, 1.0, 0.2);
        p.delta_p = -100.0;
        p
    }

    pub fn with_coupling(mut self, omega_c1: f64, omega_c2: f64) -> Self {
        self.omega_c1 = Complex64::new(omega_c1, 0.0);
        self.omega_c2 = Complex64::new(omega_c2, 0.0);
        self
    }

    pub fn with_optical_depth(mut self, od: f64) -> Self {
        self.optical_depth = od;
        self
    }

    pub fn omega_c1_sq(&self) -> f64 {
        self.omega_c1.norm_sqr()
    }

    pub fn omega_c2_sq(&self) -> f64 {
        self.omega_c2.norm_sqr()
    }

    /// γe1 = (γ41 + γ51)/2.
    pub fn gamma_e1(&self) -> f64 {
        0.5 * (self.gamma_41 + self.gamma_51)
    }

    /// γe2 = (γ21 + γ31)/2.
    pub fn gamma_e2(&self) -> f64 {
        0.5 * (self.gamma_21 + self.gamma_31)
    }

    pub fn validate(&self) -> Result<()> {
        let rates = [
            ("gamma31_si", self.gamma31_si),
            ("gamma_21", self.gamma_21),
            ("gamma_31", self.gamma_31),
            ("gamma_32", self.gamma_32),
            ("gamma_41", self.gamma_41),
            ("gamma_42", self.gamma_42),
            ("gamma_43", self.gamma_43),
            ("gamma_51", self.gamma_51),
            ("gamma_52", self.gamma_52),
            ("gamma_53", self.gamma_53),
            ("gamma_54", self.gamma_54),
            ("gamma_22", self.gamma_22),
            ("gamma_44", self.gamma_44),
            ("length_l", self.length_l),
            ("optical_depth", self.optical_depth),
            ("central_freq_s3", self.central_freq_s3),
        ];
        for (name, v) in rates {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParams(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        let finite = [
            ("delta_p", self.delta_p),
            ("delta_c1", self.delta_c1),
            ("delta_c2", self.delta_c2),
            ("omega_c1.re", self.omega_c1.re),
            ("omega_c1.im", self.omega_c1.im),
            ("omega_c2.re", self.omega_c2.re),
            ("omega_c2.im", self.omega_c2.im),
            ("k_offset", self.k_offset),
        ];
        for (name, v) in finite {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} must be finite, got {v}")));
            }
        }
        if let Some(s) = self.options.chi5_scale {
            if !(s.is_finite() && s > 0.0) {
                return Err(Error::InvalidParams(format!("chi5_scale must be finite and > 0, got {s}")));
            }
        }
        Ok(())
    }
}

/// Converts a frequency quoted in MHz to γ31 units.
///
/// With `angular` the value is read as 2π × ν MHz, otherwise as ν × 10⁶ rad/s.
pub fn mhz_to_units(mhz: f64, angular: bool, gamma31_si: f64) -> f64 {
    let rad_per_s = if angular { TAU * mhz * 1.0e6 } else { mhz * 1.0e6 };
    rad_per_s / gamma31_si
}

/// α3 = Nħ|d31|²/ε0 recovered from the optical depth, in rad/s:
/// OD·c·γ31 / (2·L·ϖ_s3).
pub fn alpha3(params: &SystemParams) -> f64 {
    let gamma31 = params.gamma_31 * params.gamma31_si;
    params.optical_depth * SPEED_OF_LIGHT * gamma31 / (2.0 * params.length_l * params.central_freq_s3)
}

/// α3 expressed in γ31 units; the prefactor of χs3 when ϝ factors are in γ31 units.
pub fn alpha3_units(params: &SystemParams) -> f64 {
    alpha3(params) / params.gamma31_si
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Preset {
    pub name: &'static str,
    pub params: SystemParams,
    pub grid: FrequencyGrid2D,
}

pub const PRESET_NAMES: [&str; 12] = [
    "fig2a", "fig2b", "fig3a", "fig3c", "fig3e", "figS2a", "figS2b", "figS2c", "figS2d", "figS2e",
    "figS2f", "figS3",
];

/// OD for presets whose caption does not state one.
const UNCAPTIONED_OD: f64 = 1.5;

fn preset_params(name: &str) -> Option<SystemParams> {
    let base = SystemParams::figure_base().with_optical_depth(UNCAPTIONED_OD);
    let detuned = |p: SystemParams| SystemParams { delta_c1: 100.0, ..p };
    let p = match name {
        "fig2a" => base.with_coupling(20.0, 20.0),
        "fig2b" | "figS3" => detuned(base.with_coupling(10.0, 50.0)),
        "fig3a" => base.with_coupling(5.0, 5.0).with_optical_depth(1.5),
        "fig3c" => base.with_coupling(1.6, 1.6).with_optical_depth(88.0),
        "fig3e" => base.with_coupling(1.6, 1.6).with_optical_depth(8.0),
        "figS2a" => base.with_coupling(5.0, 5.0),
        "figS2b" => base.with_coupling(5.0, 50.0),
        "figS2c" => base.with_coupling(50.0, 5.0),
        "figS2d" => detuned(base.with_coupling(5.0, 5.0)),
        "figS2e" => detuned(base.with_coupling(5.0, 50.0)),
        "figS2f" => detuned(base.with_coupling(50.0, 5.0)),
        _ => return None,
    };
    Some(p)
}

pub fn load_preset(name: &str) -> Result<Preset> {
    let idx = PRESET_NAMES.iter().position(|n| *n == name).ok_or_else(|| Error::UnknownPreset {
        name: name.to_string(),
        valid: PRESET_NAMES.to_vec(),
    })?;
    let name = PRESET_NAMES[idx];
    let params = preset_params(name).expect("every listed preset has parameters");
    let grid = match name {
        "fig2a" => FrequencyGrid2D::new(-100.0, 80.0, 512, 100.0, 120.0, 512)?,
        "fig3a" => FrequencyGrid2D::new(-100.0, 80.0, 512, 100.0, 80.0, 512)?,
        "fig3c" | "fig3e" => FrequencyGrid2D::new(-100.0, 36.0, 512, 100.0, 36.0, 512)?,
        "figS3" => FrequencyGrid2D::new(-50.0, 160.0, 1024, 100.0, 160.0, 1024)?,
        _ => auto_grid(&params)?,
    };
    Ok(Preset { name, params, grid })
}
