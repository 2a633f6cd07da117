//! Linear and fifth-order susceptibilities.
//!
//! The harmonic-expansion (HE) forms are the ones the rest of the crate
//! uses. The perturbation-chain-rule (PCR) forms are provided for the
//! comparison report only.

use num_complex::Complex64;
use serde::Serialize;

use crate::params::{alpha3_units, SystemParams};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dressing factors at one (ν₁, ν₂) point, γ31 units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DressingDenominators {
    pub gamma_41: Complex64,
    pub gamma_51: Complex64,
    pub gamma_54: Complex64,
    pub gamma_32: Complex64,
    pub f_21: Complex64,
    pub f_31: Complex64,
    pub f_42: Complex64,
    pub f_43: Complex64,
    pub f_52: Complex64,
    pub f_53: Complex64,
    pub pi_41: Complex64,
    pub pi_51: Complex64,
    pub d: Complex64,
    pub xi: Complex64,
}

pub fn dressing(p: &SystemParams, nu1: f64, nu2: f64) -> DressingDenominators {
    let s = nu1 + nu2;
    let gamma_41 = c(-p.gamma_41, p.delta_p);
    let gamma_51 = c(-p.gamma_51, p.delta_p + p.delta_c1);
    let gamma_54 = c(-p.gamma_54, p.delta_c1);
    let gamma_32 = c(-p.gamma_32, p.delta_c2);
    let f_21 = c(-p.gamma_21, -s);
    let f_31 = c(-p.gamma_31, p.delta_c2 - s);
    let f_42 = c(-p.gamma_42, p.delta_p + nu2);
    let f_43 = c(-p.gamma_43, nu2 + p.delta_p - p.delta_c2);
    let f_52 = c(-p.gamma_52, nu2 + p.delta_p + p.delta_c1);
    let f_53 = c(-p.gamma_53, nu2 + p.delta_p + p.delta_c1 - p.delta_c2);
    let pi_41 = gamma_41 - I * nu1;
    let pi_51 = gamma_51 - I * nu1;
    let w1 = p.omega_c1_sq();
    let w2 = p.omega_c2_sq();
    let d = (pi_41 * pi_51 + w1) * (f_21 * f_31 + w2);
    let xi = gamma_41 * gamma_51 + w1;
    DressingDenominators {
        gamma_41,
        gamma_51,
        gamma_54,
        gamma_32,
        f_21,
        f_31,
        f_42,
        f_43,
        f_52,
        f_53,
        pi_41,
        pi_51,
        d,
        xi,
    }
}

/// χs3 with ν₁+ν₂ already summed; the common core of the HE and PCR forms.
fn chi_s3_of_sum(p: &SystemParams, s: f64) -> Complex64 {
    let f21 = c(-p.gamma_21, -s).conj();
    let f31 = c(-p.gamma_31, p.delta_c2 - s).conj();
    -I * alpha3_units(p) * f21 / (f31 * f21 + p.omega_c2_sq())
}

/// χs3(ν₁, ν₂) = −iα₃ϝ₂₁*/(ϝ₃₁*ϝ₂₁* + |Ωc2|²), α₃ in γ31 units.
pub fn chi_s3_he(p: &SystemParams, nu1: f64, nu2: f64) -> Complex64 {
    chi_s3_of_sum(p, nu1 + nu2)
}

/// Im χs3 / α₃; independent of OD, used by the phase mismatch.
pub(crate) fn chi_s3_shape_im(p: &SystemParams, s: f64) -> f64 {
    let f21 = c(-p.gamma_21, -s).conj();
    let f31 = c(-p.gamma_31, p.delta_c2 - s).conj();
    (-I * f21 / (f31 * f21 + p.omega_c2_sq())).im
}

fn chi5_prefactor(p: &SystemParams) -> f64 {
    p.options.chi5_scale.unwrap_or(1.0)
}

/// χ⁽⁵⁾ = C₅·(−i)·Π₅₁*/(Ξ*·D*), or the unconjugated form when
/// `options.conjugate_chi5` is off.
pub fn chi5_he(p: &SystemParams, nu1: f64, nu2: f64) -> Complex64 {
    let d = dressing(p, nu1, nu2);
    let c5 = chi5_prefactor(p);
    if p.options.conjugate_chi5 {
        -I * c5 * d.pi_51.conj() / (d.xi.conj() * d.d.conj())
    } else {
        -I * c5 * d.pi_51 / (d.xi * d.d)
    }
}

pub fn chi_s1_pcr(p: &SystemParams, nu1: f64) -> Complex64 {
    let g = I * p.gamma_54;
    let num = nu1 + g;
    -I * alpha3_units(p) * num / ((p.delta_c1 + nu1 + g) * num + p.omega_c1_sq())
}

pub fn chi_s2_pcr(p: &SystemParams, nu2: f64) -> Complex64 {
    let x = p.delta_p + nu2;
    let num = x + I * p.gamma_32;
    -I * alpha3_units(p) * num / ((x + I * p.gamma_42) * num + p.omega_c2_sq())
}

/// Uses ϝ₂₁ = −iν₃ − γ₂₁ and ϝ₃₁ = i(Δc2 − ν₃) − γ₃₁; equals
/// `chi_s3_he(ν₁, ν₂)` for ν₃ = −ν₁−ν₂ when Δc2 = 0.
pub fn chi_s3_pcr(p: &SystemParams, nu3: f64) -> Complex64 {
    let f21 = c(-p.gamma_21, -nu3);
    let f31 = c(-p.gamma_31, p.delta_c2 - nu3);
    -I * alpha3_units(p) * f21 / (f31 * f21 + p.omega_c2_sq())
}

/// Fifth-order response through the ω_s3 generation chain.
pub fn chi5_pcr_s3(p: &SystemParams, nu1: f64, nu2: f64) -> Complex64 {
    let d = dressing(p, nu1, nu2);
    let a = d.gamma_41 * d.gamma_51 + p.omega_c1_sq();
    let b = c(-p.gamma_41, p.delta_p - nu1);
    let e = d.f_21 * d.f_31 + p.omega_c2_sq();
    -I * chi5_prefactor(p) / (a * b * e)
}

/// Fifth-order response through the ω_s2 generation chain.
pub fn chi5_pcr_s2(p: &SystemParams, nu1: f64, nu2: f64) -> Complex64 {
    let s = nu1 + nu2;
    let pi = p.gamma_32 * p.gamma_22 + p.omega_c2_sq();
    let f = c(-p.gamma_21, s);
    let g = c(-p.gamma_41, p.delta_p + s) * c(-p.gamma_51, p.delta_p + p.delta_c1 + s)
        + p.omega_c1_sq();
    let h = c(-p.gamma_41, p.delta_p + nu2);
    -I * chi5_prefactor(p) * p.gamma_22 / (pi * f * g * h)
}

/// Fifth-order response through the ω_s1 generation chain.
pub fn chi5_pcr_s1(p: &SystemParams, nu1: f64, nu2: f64) -> Complex64 {
    let x = -(p.delta_p + nu2);
    let a = c(-p.gamma_42, x) * c(-p.gamma_43, x) + p.omega_c2_sq();
    let b = c(-p.gamma_41, nu1 - p.delta_p);
    let e = c(-p.gamma_44, nu1) * c(-p.gamma_54, nu1 + p.delta_c1) + p.omega_c1_sq();
    -I * chi5_prefactor(p) / (a * b * e)
}

/// Sign of Im χs3 that represents absorption under the implemented convention.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AbsorptionSign {
    Positive,
    Negative,
}

/// Checks that Im χs3 keeps one sign over a ν₃ sweep and reports which.
///
/// Samples where |Im χs3| is below 1e-14 of the sweep maximum count as zero.
pub fn absorption_sign(p: &SystemParams, nu3: &[f64]) -> Result<AbsorptionSign> {
    let ims: Vec<f64> = nu3.iter().map(|&v| chi_s3_pcr(p, v).im).collect();
    let scale = ims.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = 1e-14 * scale;
    let positive = ims.iter().filter(|&&v| v > tol).count();
    let negative = ims.iter().filter(|&&v| v < -tol).count();
    match (positive, negative) {
        (_, 0) => Ok(AbsorptionSign::Positive),
        (0, _) => Ok(AbsorptionSign::Negative),
        _ => Err(Error::SignConvention { positive, negative }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::load_preset;
    use proptest::prelude::*;

    fn fig2a() -> SystemParams {
        load_preset("fig2a").unwrap().params
    }

    #[test]
    fn dressing_at_origin() {
        let p = fig2a();
        let d = dressing(&p, 0.0, 0.0);
        assert_eq!(d.f_21, c(-p.gamma_21, 0.0));
        assert_eq!(d.f_31, c(-p.gamma_31, 0.0));
    }

    #[test]
    fn pi51_real_on_probe_resonance() {
        let p = fig2a();
        let d = dressing(&p, -100.0, 0.0);
        assert_eq!(d.pi_51, c(-0.2, 0.0));
    }

    #[test]
    fn zero_coupling_factorizes() {
        let p = fig2a().with_coupling(0.0, 20.0);
        let d = dressing(&p, -90.0, 95.0);
        let expect = d.pi_41 * d.pi_51 * (d.f_21 * d.f_31 + 400.0);
        assert!((d.d - expect).norm() <= 1e-12 * expect.norm());
        assert_eq!(d.xi, d.gamma_41 * d.gamma_51);
    }

    #[test]
    fn damping_parts_negative() {
        let p = fig2a();
        let d = dressing(&p, 3.0, -7.0);
        for z in [
            d.gamma_41, d.gamma_51, d.gamma_54, d.gamma_32, d.f_21, d.f_31, d.f_42, d.f_43, d.f_52,
            d.f_53, d.pi_41, d.pi_51,
        ] {
            assert!(z.re < 0.0);
        }
    }

    #[test]
    fn perfect_transparency_at_two_photon_resonance() {
        let mut p = fig2a();
        p.gamma_21 = 0.0;
        let v = chi_s3_he(&p, 30.0, -30.0);
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn bare_lorentzian_without_coupling() {
        let p = fig2a().with_coupling(20.0, 0.0);
        let a = alpha3_units(&p);
        for s in [-3.0, -1.0, 0.0, 0.5, 2.0] {
            let f31 = c(-p.gamma_31, -s).conj();
            let expect = -I * a / f31;
            assert!((chi_s3_he(&p, s, 0.0) - expect).norm() < 1e-15 * a);
        }
        // half width γ31
        let peak = chi_s3_he(&p, 0.0, 0.0).norm_sqr();
        let half = chi_s3_he(&p, p.gamma_31, 0.0).norm_sqr();
        assert!((half / peak - 0.5).abs() < 1e-12);
    }

    #[test]
    fn pcr_s3_matches_he() {
        let p = fig2a();
        for k in 0..64 {
            let nu1 = -130.0 + 1.7 * k as f64;
            let nu2 = 70.0 + 0.9 * k as f64;
            let he = chi_s3_he(&p, nu1, nu2);
            let pcr = chi_s3_pcr(&p, -nu1 - nu2);
            assert!((he - pcr).norm() <= 1e-15 * he.norm().max(1e-300), "{k}");
        }
    }

    #[test]
    fn pcr_s1_zero_coupling_lorentzian() {
        let mut p = fig2a().with_coupling(0.0, 20.0);
        p.delta_c1 = 7.0;
        let a = alpha3_units(&p);
        // bare line: −iα/(Δc1 + ν₁ + iγ54), centred at ν₁ = −Δc1
        for nu in [-9.0, -7.0, -6.0, 0.0] {
            let expect = -I * a / (p.delta_c1 + nu + I * p.gamma_54);
            assert!((chi_s1_pcr(&p, nu) - expect).norm() < 1e-12 * expect.norm());
        }
        let peak = chi_s1_pcr(&p, -7.0).norm();
        assert!(chi_s1_pcr(&p, -6.9).norm() < peak && chi_s1_pcr(&p, -7.1).norm() < peak);
    }

    #[test]
    fn chi5_vanishes_for_strong_pump_coupling() {
        let mut prev = f64::INFINITY;
        for o in [20.0, 200.0, 2000.0, 20000.0] {
            let p = fig2a().with_coupling(o, 20.0);
            let v = chi5_he(&p, -80.0, 100.0).norm();
            assert!(v < prev);
            prev = v;
        }
        assert!(prev < 1e-12);
    }

    #[test]
    fn conjugation_flag_keeps_magnitude() {
        let mut p = fig2a();
        let a = chi5_he(&p, -81.0, 99.0);
        p.options.conjugate_chi5 = false;
        let b = chi5_he(&p, -81.0, 99.0);
        assert!((a.norm() - b.norm()).abs() < 1e-12 * a.norm());
        assert!((a - b).norm() > 1e-3 * a.norm());
    }

    #[test]
    fn absorption_sign_is_uniform() {
        let p = fig2a();
        let sweep: Vec<f64> = (0..4001).map(|k| -200.0 + 0.1 * k as f64).collect();
        assert_eq!(absorption_sign(&p, &sweep).unwrap(), AbsorptionSign::Positive);
    }

    #[test]
    fn purity() {
        let p = fig2a();
        assert_eq!(chi5_he(&p, -80.3, 101.2).re.to_bits(), chi5_he(&p, -80.3, 101.2).re.to_bits());
    }

    proptest! {
        #[test]
        fn chi_s3_depends_on_sum_only(nu1 in -200.0f64..200.0, nu2 in -200.0f64..200.0, d in -50.0f64..50.0) {
            let p = fig2a();
            let a = chi_s3_he(&p, nu1, nu2);
            let b = chi_s3_he(&p, nu1 + d, nu2 - d);
            let s = (nu1 + nu2, (nu1 + d) + (nu2 - d));
            prop_assume!(s.0 == s.1);
            prop_assert_eq!(a, b);
        }

        #[test]
        fn rabi_phases_do_not_matter(ph1 in -3.2f64..3.2, ph2 in -3.2f64..3.2, nu1 in -140.0f64..-60.0, nu2 in 40.0f64..160.0) {
            let p = fig2a();
            let mut q = p.clone();
            q.omega_c1 = Complex64::from_polar(20.0, ph1);
            q.omega_c2 = Complex64::from_polar(20.0, ph2);
            let pairs = [
                (chi5_he(&p, nu1, nu2), chi5_he(&q, nu1, nu2)),
                (chi_s3_he(&p, nu1, nu2), chi_s3_he(&q, nu1, nu2)),
                (chi5_pcr_s1(&p, nu1, nu2), chi5_pcr_s1(&q, nu1, nu2)),
                (chi5_pcr_s2(&p, nu1, nu2), chi5_pcr_s2(&q, nu1, nu2)),
                (chi5_pcr_s3(&p, nu1, nu2), chi5_pcr_s3(&q, nu1, nu2)),
            ];
            for (a, b) in pairs {
                prop_assert!((a - b).norm() <= 1e-12 * a.norm());
            }
        }

        #[test]
        fn chi_s3_absorbs_with_positive_im(s in -300.0f64..300.0, o2 in 0.0f64..60.0, g21 in 1e-6f64..1.0) {
            let mut p = fig2a().with_coupling(20.0, o2);
            p.gamma_21 = g21;
            prop_assert!(chi_s3_he(&p, s, 0.0).im > 0.0);
        }
    }
}
