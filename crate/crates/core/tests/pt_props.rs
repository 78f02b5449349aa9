use num_complex::Complex64;
use proptest::prelude::*;
use spectral_zeta::closedform::{z1_zero_alpha, z2_zero_alpha, ZetaValue};
use spectral_zeta::ptspectrum::{pt_shoot, pt_solve_spectrum, pt_solve_spectrum_with, PtConfig, PtProblemSpec};
use spectral_zeta::sumrules::fused_sumrule_eval;
use spectral_zeta::zeta_numeric::zeta_with_tail;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn wronskian_conjugation_symmetry(
        m in 1.4f64..3.0,
        re in 0.5f64..40.0,
        im in -5.0f64..5.0,
        k in 1u32..=2,
    ) {
        prop_assume!((k as f64) < m);
        let p = PtProblemSpec::new(m, k, 0.0, 0.5).unwrap();
        let e = Complex64::new(re, im);
        let w = pt_shoot(&p, e).unwrap();
        let wc = pt_shoot(&p, e.conj()).unwrap();
        prop_assert!((w.conj() - wc).norm() <= 1e-9 * w.norm(), "E={e}: {w} vs {wc}");
    }
}

#[test]
fn levels_do_not_depend_on_ray_length() {
    for (m, k) in [(2.0, 1), (1.5, 1), (3.0, 2)] {
        let p = PtProblemSpec::new(m, k, 0.0, 0.5).unwrap();
        let a = pt_solve_spectrum(&p, 10, 1e-13).unwrap();
        let b = pt_solve_spectrum_with(&p, 10, 1e-13, PtConfig { radius_scale: 2.0, ..PtConfig::default() }).unwrap();
        for (x, y) in a.levels().iter().zip(b.levels()) {
            let gap = (x.energy - y.energy).norm();
            assert!(gap < x.err.max(y.err), "M={m} K={k} level {}: {} vs {}", x.index, x.energy, y.energy);
        }
    }
}

fn closed(sigma: f64, lambda: f64) -> Vec<ZetaValue> {
    vec![z1_zero_alpha(sigma, lambda).unwrap(), z2_zero_alpha(sigma, lambda).unwrap()]
}

#[test]
fn direct_fused_zetas_match_sum_rules() {
    for (m, k) in [(2.0, 1), (3.0, 1), (3.0, 2)] {
        let sigma = 1.0 / (m + 1.0);
        let s = pt_solve_spectrum(&PtProblemSpec::new(m, k, 0.0, 0.5).unwrap(), 40, 1e-13).unwrap();
        let (zm, zp) = (closed(sigma, 0.5), closed(sigma, -0.5));
        for n in 1..=2 {
            let direct = zeta_with_tail(&s, n as u32).unwrap().value;
            let rule = fused_sumrule_eval(k, n, &zm, &zp, sigma, 0.5, 0.0).unwrap().value;
            assert!(((direct - rule) / rule).abs() <= 1e-5, "M={m} K={k} n={n}: {direct} vs {rule}");
        }
    }
}
