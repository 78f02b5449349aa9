use proptest::prelude::*;
use spectral_zeta::closedform::{check_admissible, z1_zero_alpha, z2_zero_alpha, ZetaValue};
use spectral_zeta::sumrules::{
    alpha_sumrule_residual, fused_series_check, fused_sumrule_eval, radial_sumrule_residual, CLOSED_FORM_TOL,
};

fn closed(sigma: f64, lambda: f64) -> Vec<ZetaValue> {
    vec![z1_zero_alpha(sigma, lambda).unwrap(), z2_zero_alpha(sigma, lambda).unwrap()]
}

fn admissible(sigma: f64, lambda: f64, alpha: f64) -> bool {
    check_admissible(1.0 / sigma - 1.0, alpha, lambda).is_ok() && check_admissible(1.0 / sigma - 1.0, -alpha, lambda).is_ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn radial_and_fused_rules_hold(sigma in 0.15f64..0.48, lambda in 0.05f64..1.0) {
        prop_assume!(admissible(sigma, lambda, 0.0));
        let (zm, zp) = (closed(sigma, lambda), closed(sigma, -lambda));
        for order in 1..=2 {
            let r = radial_sumrule_residual(order, &zm, &zp, sigma, lambda).unwrap();
            prop_assert!(r.pass && r.tolerance == CLOSED_FORM_TOL, "{r:?}");
            // K = 0 has a vanishing fused zeta, so its rule is the radial one
            let z0 = fused_sumrule_eval(0, order, &zm, &zp, sigma, lambda, 0.0).unwrap();
            prop_assert_eq!(z0.value, r.rhs);
            for k in 1..=3 {
                let (rep, imag) = fused_series_check(k, order, &zm, &zp, sigma, lambda, 0.0).unwrap();
                prop_assert!(rep.pass, "{rep:?}");
                prop_assert!(imag < 1e-10, "K={k} order={order}: imaginary part {imag}");
            }
        }
    }

    #[test]
    fn alpha_rule_holds(sigma in 0.15f64..0.48, lambda in 0.05f64..1.0, alpha in -0.6f64..0.6) {
        prop_assume!(admissible(sigma, lambda, alpha));
        let r = alpha_sumrule_residual(sigma, lambda, alpha).unwrap();
        prop_assert!(r.pass, "{r:?}");
    }
}
