use proptest::prelude::*;
use spectral_zeta::closedform::{check_admissible, Branch, ProblemSpec};
use spectral_zeta::eigensolver::{collocation_spectrum, solve_spectrum, Shooter, ShootingConfig};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn levels_increase_and_count_nodes(
        m in 1.3f64..3.5,
        lambda in 0.1f64..1.5,
        alpha in prop_oneof![Just(0.0), -0.8f64..0.8],
        plus in any::<bool>(),
    ) {
        prop_assume!(check_admissible(m, alpha, lambda).is_ok());
        let branch = if plus { Branch::Irregular } else { Branch::Regular };
        let p = ProblemSpec::new(m, alpha, lambda, branch).unwrap();
        let s = solve_spectrum(&p, 10, 1e-12).unwrap();
        let e = s.real_energies();
        for w in e.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
        let sh = Shooter::new(p, ShootingConfig::default());
        for (k, &ek) in e.iter().enumerate() {
            prop_assert_eq!(sh.shoot(ek).unwrap().nodes, k);
        }
    }
}

#[test]
fn shooting_and_collocation_agree() {
    for m in [1.5, 2.0, 3.0] {
        for lambda in [0.3, 0.5, 1.2] {
            for alpha in [0.0, 0.5] {
                let p = ProblemSpec::new(m, alpha, lambda, Branch::Regular).unwrap();
                let a = solve_spectrum(&p, 20, 1e-12).unwrap();
                let b = collocation_spectrum(&p, 20, 200).unwrap();
                for (x, y) in a.levels().iter().zip(b.levels()) {
                    let tol = (10.0 * (x.err + y.err)).max(1e-8);
                    let gap = (x.energy.re - y.energy.re).abs();
                    assert!(gap <= tol, "M={m} lambda={lambda} alpha={alpha} k={}: {} vs {}", x.index, x.energy.re, y.energy.re);
                }
            }
        }
    }
}

#[test]
fn large_k_growth_exponent() {
    for m in [1.5, 2.0, 3.0] {
        let p = ProblemSpec::new(m, 0.0, 0.5, Branch::Regular).unwrap();
        let e = solve_spectrum(&p, 61, 1e-12).unwrap().real_energies();
        // levels counted from 1
        let pts: Vec<(f64, f64)> = (30..=60).map(|k| (((k + 1) as f64).ln(), e[k].ln())).collect();
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
        let want = 2.0 * m / (m + 1.0);
        assert!((slope / want - 1.0).abs() <= 0.01, "M={m}: slope {slope} vs {want}");
    }
}
