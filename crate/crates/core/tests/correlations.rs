//! Transform oracles and Fig. 3 temporal-correlation properties.

use num_complex::Complex64;
use sswm_core::correlations::{
    self, amplitude_a3, coherence_extent, diagonal_support_metric, oracle_check, oscillation_period,
    parseval_ratio, Regime,
};
use sswm_core::params::load_preset;
use sswm_core::spectra::{predicted_resonances, FrequencyGrid2D, Quantity, SpectralField2D};
use sswm_core::Schedule;

fn run(name: &str) -> (sswm_core::SystemParams, correlations::CorrelationRun) {
    let p = load_preset(name).unwrap();
    let r = correlations::run(&p.params, &p.grid, Schedule::default()).unwrap();
    (p.params, r)
}

#[test]
fn lattice_single_pole_matches_closed_form() {
    // K(ν) = Σ_{p<n} r^p e^{−ipδτ(ν−a)} summed in closed form; its lattice
    // transform is nδν·r^p·e^{iaτ_p} for τ_p = pδτ ≥ 0.
    let g = FrequencyGrid2D::new(-100.0, 80.0, 512, 100.0, 64.0, 256).unwrap();
    let (a, b) = (g.nu1(200), g.nu2(140));
    let (ga, gb) = (0.6, 0.52);
    let line = |nu: f64, center: f64, gamma: f64, dtau: f64, n: usize| {
        let r = (-gamma * dtau).exp();
        let rn = r.powi(n as i32);
        Complex64::new(1.0 - rn, 0.0) / (1.0 - Complex64::from_polar(r, -dtau * (nu - center)))
    };
    let field = SpectralField2D::from_fn(&g, Quantity::Kernel, 0.5, |x, y| {
        line(x, a, ga, g.dtau1(), g.n1) * line(y, b, gb, g.dtau2(), g.n2)
    });
    let amp = amplitude_a3(&field).unwrap();
    let peak = g.nu1_span * g.nu2_span;
    let mut worst = 0.0f64;
    for q1 in g.n1 / 2..g.n1 - 8 {
        for q2 in g.n2 / 2..g.n2 - 8 {
            let (t1, t2) = (amp.tau31[q1], amp.tau32[q2]);
            let want = Complex64::from_polar(peak * (-ga * t1 - gb * t2).exp(), a * t1 + b * t2);
            worst = worst.max((amp.values[[q1, q2]] - want).norm() / peak);
        }
    }
    eprintln!("lattice single pole max rel deviation {worst:.3e}");
    assert!(worst < 1e-6);
}

#[test]
fn continuum_lorentzian_pair() {
    // 1/((ν₁−a−iγ₁)(ν₂−b−iγ₂)) ↔ (2πi)² e^{i(aτ₃₁+bτ₃₂)} e^{−γ₁τ₃₁−γ₂τ₃₂}, τ > 0
    let g = FrequencyGrid2D::new(0.0, 512.0, 4096, 0.0, 512.0, 4096).unwrap();
    let (a, b, ga, gb) = (1.5, -2.0, 1.0, 0.7);
    let field = SpectralField2D::from_fn(&g, Quantity::Kernel, 0.5, |x, y| {
        Complex64::new(1.0, 0.0) / (Complex64::new(x - a, -ga) * Complex64::new(y - b, -gb))
    });
    let amp = amplitude_a3(&field).unwrap();
    let top = (2.0 * std::f64::consts::PI).powi(2);
    let mut worst = 0.0f64;
    for (q1, &t1) in amp.tau31.iter().enumerate() {
        for (q2, &t2) in amp.tau32.iter().enumerate() {
            if !(0.5..=3.0).contains(&t1) || !(0.5..=3.0).contains(&t2) {
                continue;
            }
            let want = -Complex64::from_polar(top * (-ga * t1 - gb * t2).exp(), a * t1 + b * t2);
            worst = worst.max((amp.values[[q1, q2]] - want).norm() / top);
        }
    }
    eprintln!("continuum Lorentzian max rel deviation {worst:.3e}");
    assert!(worst < 2e-2);
}

#[test]
fn figure_presets() {
    for name in ["fig3a", "fig3c", "fig3e"] {
        let (p, r) = run(name);
        let parseval = parseval_ratio(&r.field, &r.amplitude);
        let rows = oracle_check(&p, &r.field, &r.amplitude, 8, 11, Schedule::default());
        let worst = rows.iter().map(|x| x.deviation).fold(0.0, f64::max);
        let diag = diagonal_support_metric(&r.surface);
        let ext32 = coherence_extent(&r.r2_tau32);
        let ext31 = coherence_extent(&r.r2_tau31);
        let per32 = oscillation_period(&r.r2_tau32).ok();
        let per31 = oscillation_period(&r.r2_tau31).ok();
        eprintln!(
            "{name}: parseval−1 {:.2e} quad {worst:.2e} edge {:.2e} diag {diag:?} ext32 {ext32:.3} ext31 {ext31:.3} per32 {per32:?} per31 {per31:?}",
            parseval - 1.0,
            r.field.edge_ratio()
        );
        assert!((parseval - 1.0).abs() < 1e-9);
        assert!(worst <= 1e-3);
        assert!(diag.above > 0.9 || diag.above < 0.1);
    }
}

#[test]
fn damped_rabi_period_and_group_delay_extent() {
    let (p, a) = run("fig3a");
    let (_, c) = run("fig3c");
    let omega_e2 = predicted_resonances(&p).unwrap().omega_e2;
    let period = oscillation_period(&a.r2_tau32).unwrap();
    let want = std::f64::consts::TAU / omega_e2;
    eprintln!("fig3a period {period:.4} vs {want:.4}");
    assert!((period - want).abs() < 0.1 * want);
    let ratio = coherence_extent(&c.r2_tau32) / coherence_extent(&a.r2_tau32);
    eprintln!("extent ratio {ratio:.2}");
    assert!(ratio >= 5.0);
    assert_eq!(sswm_core::correlations::classify_regime(&p).unwrap().regime, Regime::DampedRabi);
}
