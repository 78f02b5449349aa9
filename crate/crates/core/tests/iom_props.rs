use proptest::prelude::*;
use spectral_zeta::closedform::{check_admissible, z1_zero_alpha, z2_zero_alpha, ZetaValue};
use spectral_zeta::iom::{g1_closed, g2_explicit, g_from_zetas, map_params};
use spectral_zeta::specfun::sin_pi;
use spectral_zeta::sumrules::fused_sumrule_eval;

fn fused(sigma: f64, lambda: f64) -> Vec<f64> {
    let zm: Vec<ZetaValue> = vec![z1_zero_alpha(sigma, lambda).unwrap(), z2_zero_alpha(sigma, lambda).unwrap()];
    let zp: Vec<ZetaValue> = vec![z1_zero_alpha(sigma, -lambda).unwrap(), z2_zero_alpha(sigma, -lambda).unwrap()];
    (1..=2).map(|n| fused_sumrule_eval(1, n, &zm, &zp, sigma, lambda, 0.0).unwrap().value).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn g1_from_zetas_is_the_closed_form(sigma in 0.12f64..0.48, lambda in 0.05f64..1.5) {
        prop_assume!(check_admissible(1.0 / sigma - 1.0, 0.0, lambda).is_ok());
        let z = fused(sigma, lambda);
        let a = g_from_zetas(1, &z, sigma, lambda).unwrap();
        let b = g1_closed(map_params(sigma, lambda).unwrap()).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * b.abs(), "{a} vs {b}");
    }

    #[test]
    fn g2_forms_agree(sigma in 0.12f64..0.48, lambda in 0.05f64..1.5) {
        prop_assume!(check_admissible(1.0 / sigma - 1.0, 0.0, lambda).is_ok());
        prop_assume!(sin_pi(2.0 * sigma * lambda).abs() > 0.05);
        let z = fused(sigma, lambda);
        let a = g_from_zetas(2, &z, sigma, lambda).unwrap();
        let b = g2_explicit(sigma, lambda, z2_zero_alpha(sigma, lambda).unwrap().value, z2_zero_alpha(sigma, -lambda).unwrap().value).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.abs(), "{a} vs {b}");
    }
}
