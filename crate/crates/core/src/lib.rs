//! Spontaneous six-wave mixing in a five-level asymmetric-M atomic ensemble.
//!
//! The crate evaluates the harmonic-expansion linear and fifth-order
//! susceptibilities, the EIT-modified phase-matching kernel, and the
//! three-photon and conditional two-photon coincidence rates obtained from
//! them. The perturbation-chain-rule susceptibilities are provided for
//! comparison.
//!
//! Frequencies, rates and Rabi frequencies are stored in units of γ31 and
//! times in units of 1/γ31. Lengths are in meters.

pub mod compare;
pub mod config;
pub mod correlations;
pub mod error;
pub mod exec;
pub mod export;
pub mod params;
pub mod propagation;
pub mod response;
pub mod spectra;

pub use error::{Error, Result};
pub use exec::Schedule;
pub use params::{Preset, SystemParams};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
