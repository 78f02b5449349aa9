use num_complex::Complex64;
use proptest::prelude::*;
use spectral_zeta::closedform::{check_admissible, z1_zero_alpha, z2_zero_alpha, Branch, ProblemSpec};
use spectral_zeta::eigensolver::solve_spectrum;
use spectral_zeta::specfun::hurwitz_zeta;
use spectral_zeta::spectrum::{Level, Spectrum, SpectrumMethod, SpectrumProblem};
use spectral_zeta::zeta_numeric::zeta_with_tail;

fn power_law(m: f64, count: usize, a: f64, offset: f64) -> Spectrum {
    let p = 2.0 * m / (m + 1.0);
    let problem = ProblemSpec::new(m, 0.0, 0.5, Branch::Regular).unwrap();
    let levels = (0..count)
        .map(|k| Level { index: k, energy: Complex64::new((a * (k as f64 + offset)).powf(p), 0.0), err: 1e-15 })
        .collect();
    Spectrum::new(SpectrumProblem::Radial(problem), levels, SpectrumMethod::Shooting).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exact_on_power_law_spectra(m in 1.5f64..4.0, a in 0.5f64..3.0, offset in 0.3f64..1.5, n in 1u32..=3) {
        let p = 2.0 * m / (m + 1.0);
        prop_assume!(n as f64 * p > 1.3);
        let z = zeta_with_tail(&power_law(m, 40, a, offset), n).unwrap();
        let s = n as f64 * p;
        let want = a.powf(-s) * hurwitz_zeta(s, offset);
        prop_assert!((z.value - want).abs() <= 1e-8 * want, "M={m} n={n}: {} vs {want}", z.value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn doubling_the_level_count_stays_within_error(m in 1.5f64..3.5, lambda in 0.1f64..1.2, n in 1u32..=2) {
        prop_assume!(check_admissible(m, 0.0, lambda).is_ok());
        let p = ProblemSpec::new(m, 0.0, lambda, Branch::Regular).unwrap();
        let s = solve_spectrum(&p, 60, 1e-13).unwrap();
        let full = zeta_with_tail(&s, n).unwrap();
        let half = zeta_with_tail(&s.truncated(30), n).unwrap();
        prop_assert!((full.value - half.value).abs() < half.err, "{} vs {} (err {})", full.value, half.value, half.err);
    }
}

#[test]
fn eigenvalue_sums_match_closed_forms() {
    for m in [1.5, 2.0, 3.0] {
        let sigma = 1.0 / (m + 1.0);
        for lambda in [0.3, 0.5] {
            let s = solve_spectrum(&ProblemSpec::new(m, 0.0, lambda, Branch::Regular).unwrap(), 60, 1e-13).unwrap();
            let closed = [z1_zero_alpha(sigma, lambda).unwrap().value, z2_zero_alpha(sigma, lambda).unwrap().value];
            for (n, want) in [1u32, 2].into_iter().zip(closed) {
                let got = zeta_with_tail(&s, n).unwrap().value;
                assert!(((got - want) / want).abs() <= 1e-5, "M={m} lambda={lambda} n={n}: {got} vs {want}");
            }
        }
    }
}
