//! TOML run configuration.
//!
//! ```toml
//! preset = "fig3c"      # base parameter set and grid
//! angular = true        # MHz keys below are 2π × ν MHz
//! omega_c2 = 4.8        # MHz, overrides the preset
//! optical_depth = 32
//! length_cm = 1.5
//!
//! [grid]                # γ31 units
//! nu1_center = -100.0
//! nu1_span = 36.0
//! n1 = 512
//! ```
//!
//! Precedence, lowest first: preset, `[native]` table (exact γ31-unit
//! values), top-level keys.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::params::{load_preset, mhz_to_units, SystemParams, DEFAULT_GAMMA31_SI};
use crate::spectra::grid::{auto_grid, FrequencyGrid2D};
use crate::{Error, Result};

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub nu1_center: Option<f64>,
    pub nu1_span: Option<f64>,
    pub n1: Option<usize>,
    pub nu2_center: Option<f64>,
    pub nu2_span: Option<f64>,
    pub n2: Option<usize>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub preset: Option<String>,
    /// Whether MHz keys carry the 2π factor. Defaults to true.
    pub angular: Option<bool>,
    /// Sets the SI value of the γ31 unit (MHz, same `angular` reading).
    pub gamma31_mhz: Option<f64>,

    pub gamma_21: Option<f64>,
    pub gamma_31: Option<f64>,
    pub gamma_32: Option<f64>,
    pub gamma_41: Option<f64>,
    pub gamma_42: Option<f64>,
    pub gamma_43: Option<f64>,
    pub gamma_51: Option<f64>,
    pub gamma_52: Option<f64>,
    pub gamma_53: Option<f64>,
    pub gamma_54: Option<f64>,
    pub gamma_22: Option<f64>,
    pub gamma_44: Option<f64>,
    pub delta_p: Option<f64>,
    pub delta_c1: Option<f64>,
    pub delta_c2: Option<f64>,
    pub omega_c1: Option<f64>,
    pub omega_c2: Option<f64>,

    pub optical_depth: Option<f64>,
    pub length_cm: Option<f64>,
    /// rad/s
    pub central_freq_s3: Option<f64>,
    /// 1/m
    pub k_offset: Option<f64>,

    pub chi5_scale: Option<f64>,
    pub conjugate_chi5: Option<bool>,
    pub halve_absorption: Option<bool>,
    pub literal_omega_tr: Option<bool>,

    pub native: Option<SystemParams>,
    pub grid: Option<GridSpec>,
}

/// Parameters and grid resolved from a configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub preset: Option<String>,
    pub params: SystemParams,
    pub grid: FrequencyGrid2D,
}

impl ConfigFile {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn resolve(&self) -> Result<RunConfig> {
        let preset = self.preset.as_deref().map(load_preset).transpose()?;
        let mut params = match (&self.native, &preset) {
            (Some(native), _) => native.clone(),
            (None, Some(p)) => p.params.clone(),
            (None, None) => SystemParams::figure_base(),
        };

        let angular = self.angular.unwrap_or(true);
        if let Some(g) = self.gamma31_mhz {
            let si = mhz_to_units(g, angular, 1.0);
            params.gamma31_si = si;
        }
        let unit = params.gamma31_si;
        let conv = |v: f64| mhz_to_units(v, angular, unit);

        macro_rules! rate {
            ($($field:ident),*) => {
                $(if let Some(v) = self.$field { params.$field = conv(v); })*
            };
        }
        rate!(
            gamma_21, gamma_31, gamma_32, gamma_41, gamma_42, gamma_43, gamma_51, gamma_52,
            gamma_53, gamma_54, gamma_22, gamma_44, delta_p, delta_c1, delta_c2
        );
        if let Some(v) = self.omega_c1 {
            params.omega_c1 = Complex64::new(conv(v), 0.0);
        }
        if let Some(v) = self.omega_c2 {
            params.omega_c2 = Complex64::new(conv(v), 0.0);
        }
        if let Some(v) = self.optical_depth {
            params.optical_depth = v;
        }
        if let Some(v) = self.length_cm {
            params.length_l = v * 1e-2;
        }
        if let Some(v) = self.central_freq_s3 {
            params.central_freq_s3 = v;
        }
        if let Some(v) = self.k_offset {
            params.k_offset = v;
        }
        if self.chi5_scale.is_some() {
            params.options.chi5_scale = self.chi5_scale;
        }
        if let Some(v) = self.conjugate_chi5 {
            params.options.conjugate_chi5 = v;
        }
        if let Some(v) = self.halve_absorption {
            params.options.halve_absorption = v;
        }
        if let Some(v) = self.literal_omega_tr {
            params.options.literal_omega_tr = v;
        }
        params.validate()?;

        let base_grid = match &preset {
            Some(p) if self.native.is_none() && !self.overrides_physics() => p.grid.clone(),
            _ => auto_grid(&params)?,
        };
        let grid = match &self.grid {
            Some(spec) => apply_grid_spec(&base_grid, spec)?,
            None => base_grid,
        };
        Ok(RunConfig { preset: self.preset.clone(), params, grid })
    }

    fn overrides_physics(&self) -> bool {
        [
            self.gamma_21, self.gamma_31, self.gamma_41, self.gamma_51, self.delta_p,
            self.delta_c1, self.delta_c2, self.omega_c1, self.omega_c2,
        ]
        .iter()
        .any(Option::is_some)
    }
}

pub fn apply_grid_spec(base: &FrequencyGrid2D, spec: &GridSpec) -> Result<FrequencyGrid2D> {
    FrequencyGrid2D::new(
        spec.nu1_center.unwrap_or(base.nu1_center),
        spec.nu1_span.unwrap_or(base.nu1_span),
        spec.n1.unwrap_or(base.n1),
        spec.nu2_center.unwrap_or(base.nu2_center),
        spec.nu2_span.unwrap_or(base.nu2_span),
        spec.n2.unwrap_or(base.n2),
    )
}

/// Serializes parameters as a config whose `[native]` table reloads them
/// bit-exactly.
pub fn params_to_toml(params: &SystemParams) -> Result<String> {
    let cfg = ConfigFile { native: Some(params.clone()), ..Default::default() };
    toml::to_string(&cfg).map_err(|e| Error::Config(e.to_string()))
}

pub fn default_gamma31_mhz() -> f64 {
    DEFAULT_GAMMA31_SI / (std::f64::consts::TAU * 1e6)
}
