use proptest::prelude::*;
use spectral_zeta::specfun::{gamma, gamma_ratio, log_gamma, pfq_unit, pochhammer, sin_pi, HypergeomSpec};

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

proptest! {
    #[test]
    fn gamma_matches_exp_log_gamma(x in 0.01f64..40.0) {
        let g = gamma(x).unwrap();
        prop_assert!((g - log_gamma(x).unwrap().exp()).abs() <= 1e-12 * g, "x = {x}");
    }

    #[test]
    fn gamma_recurrence(x in 0.1f64..20.0) {
        prop_assert!(rel(gamma(x + 1.0).unwrap(), x * gamma(x).unwrap()) <= 1e-12, "x = {x}");
    }

    #[test]
    fn gamma_reflection(x in 0.001f64..0.999) {
        let v = gamma(x).unwrap() * gamma(1.0 - x).unwrap() * sin_pi(x) / std::f64::consts::PI;
        prop_assert!((v - 1.0).abs() <= 1e-11, "x = {x}: {v}");
    }

    #[test]
    fn terminating_series_is_the_finite_sum(
        n in 0usize..25,
        a in 0.05f64..3.0,
        b in -2.5f64..3.0,
        c in 0.2f64..4.0,
        d in 0.3f64..4.0,
    ) {
        let spec = HypergeomSpec::new(vec![-(n as f64), a, b], vec![c, d]).unwrap();
        let brute: f64 = (0..=n)
            .map(|j| pochhammer(-(n as f64), j) * pochhammer(a, j) * pochhammer(b, j) / (pochhammer(c, j) * pochhammer(d, j) * pochhammer(1.0, j)))
            .sum();
        let scale: f64 = (0..=n)
            .map(|j| (pochhammer(-(n as f64), j) * pochhammer(a, j) * pochhammer(b, j) / (pochhammer(c, j) * pochhammer(d, j) * pochhammer(1.0, j))).abs())
            .sum();
        let (v, _) = pfq_unit(&spec, 1e-15).unwrap();
        prop_assert!((v - brute).abs() <= 1e-13 * scale, "n={n}: {v} vs {brute}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn gauss_summation(a in 0.05f64..1.5, b in 0.05f64..1.5, excess in 0.3f64..2.0) {
        let c = a + b + excess;
        let (v, _) = pfq_unit(&HypergeomSpec::new(vec![a, b], vec![c]).unwrap(), 1e-14).unwrap();
        let want = gamma_ratio(&[c, c - a - b], &[c - a, c - b]).unwrap();
        prop_assert!(rel(v, want) <= 1e-10, "{v} vs {want}");
    }

    #[test]
    fn dixon_summation(a in 0.1f64..1.5, b in 0.05f64..0.5, c in 0.05f64..0.5) {
        // parameter excess 2 + a − 2b − 2c
        let spec = HypergeomSpec::new(vec![a, b, c], vec![1.0 + a - b, 1.0 + a - c]).unwrap();
        prop_assume!(spec.convergence_indicator() > 0.3);
        let (v, _) = pfq_unit(&spec, 1e-14).unwrap();
        let want = gamma_ratio(
            &[1.0 + 0.5 * a, 1.0 + a - b, 1.0 + a - c, 1.0 + 0.5 * a - b - c],
            &[1.0 + a, 1.0 + 0.5 * a - b, 1.0 + 0.5 * a - c, 1.0 + a - b - c],
        )
        .unwrap();
        prop_assert!(rel(v, want) <= 1e-10, "{v} vs {want}");
    }
}
