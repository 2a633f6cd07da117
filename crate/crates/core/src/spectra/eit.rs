//! One-dimensional EIT line shapes of χs3.

use num_complex::Complex64;

use crate::params::SystemParams;
use crate::propagation::{phase_argument, phi};
use crate::response::chi_s3_he;
use crate::{Error, Result};

/// (Re χs3, Im χs3) along ν₃ = −(ν₁+ν₂).
///
/// The axis must span at least 6|Ωc2| so both Autler–Townes wings are
/// covered. The 2D landscape is `evaluate(Quantity::ChiS3, ..)`.
pub fn eit_landscape(params: &SystemParams, nu3_axis: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let lo = nu3_axis.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = nu3_axis.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let need = 6.0 * params.omega_c2.norm();
    if nu3_axis.is_empty() || hi - lo < need {
        return Err(Error::InvalidGrid(format!(
            "ν₃ axis spans {:.4}, needs at least 6|Ωc2| = {need:.4}",
            (hi - lo).max(0.0)
        )));
    }
    Ok(nu3_axis
        .iter()
        .map(|&nu3| {
            let v = chi_s3_he(params, -nu3, 0.0);
            (v.re, v.im)
        })
        .unzip())
}

/// |Φ|² of the absorptive part of ΔkL/2 at ν₁+ν₂ = `s`.
fn absorptive_power(params: &SystemParams, s: f64) -> f64 {
    let x = phase_argument(params, s);
    phi(Complex64::new(0.0, x.im)).norm_sqr()
}

/// Full width (γ31 units) of the transparency dip seen through
/// |Φ(i·Im ΔkL/2)|², measured at half of its value on two-photon resonance.
pub fn transparency_width(params: &SystemParams) -> Result<f64> {
    let s0 = params.delta_c2;
    let top = absorptive_power(params, s0);
    let level = 0.5 * top;
    let scale = params.omega_c2.norm().max(params.gamma_31);
    let step = 1e-3 * scale;
    let limit = 200.0 * scale;
    let edge = |dir: f64| -> Result<f64> {
        let mut a = 0.0;
        while a < limit {
            let b = a + step;
            if absorptive_power(params, s0 + dir * b) < level {
                let (mut lo, mut hi) = (a, b);
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    if absorptive_power(params, s0 + dir * mid) < level {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                return Ok(0.5 * (lo + hi));
            }
            a = b;
        }
        Err(Error::Invariant("transparency dip has no half-power edge".into()))
    };
    Ok(edge(1.0)? + edge(-1.0)?)
}
