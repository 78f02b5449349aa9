use proptest::prelude::*;
use spectral_zeta::closedform::{
    check_admissible, z1_general_alpha, z1_zero_alpha, z2_plus_simplified, z2_zero_alpha, Branch, ProblemSpec,
};

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn branch_swap_is_a_sign_of_lambda(m in 1.2f64..5.0, lambda in 0.02f64..2.0) {
        prop_assume!(check_admissible(m, 0.0, lambda).is_ok());
        let plus = ProblemSpec::new(m, 0.0, lambda, Branch::Irregular).unwrap();
        let minus = ProblemSpec::new(m, 0.0, -lambda, Branch::Regular).unwrap();
        prop_assert_eq!(plus.effective_lambda(), minus.effective_lambda());
        prop_assert_eq!(plus.swapped().effective_lambda(), lambda);
        let s = plus.sigma();
        let a = z1_zero_alpha(s, plus.effective_lambda()).unwrap().value;
        let b = z1_zero_alpha(s, minus.effective_lambda()).unwrap().value;
        prop_assert_eq!(a.to_bits(), b.to_bits());
        prop_assert!(a.is_finite());
        prop_assert!(z2_zero_alpha(s, lambda).unwrap().value.is_finite());
    }

    #[test]
    fn dixon_reduction_of_general_alpha(sigma in 0.12f64..0.48, lambda in -1.5f64..1.5) {
        prop_assume!(check_admissible(1.0 / sigma - 1.0, 0.0, lambda).is_ok());
        let a = z1_general_alpha(sigma, lambda, 0.0).unwrap().value;
        let b = z1_zero_alpha(sigma, lambda).unwrap().value;
        prop_assert!(rel(a, b) <= 1e-10, "sigma={sigma} lambda={lambda}: {a} vs {b}");
    }

    #[test]
    fn plus_two_simplified_on_its_locus(sigma in 0.3f64..0.48) {
        let lambda = 1.0 / sigma - 2.0;
        prop_assume!(check_admissible(1.0 / sigma - 1.0, 0.0, lambda).is_ok());
        let a = z2_plus_simplified(sigma, 1).unwrap().value;
        let b = z2_zero_alpha(sigma, -lambda).unwrap().value;
        prop_assert!(rel(a, b) <= 1e-9, "sigma={sigma}: {a} vs {b}");
    }
}
