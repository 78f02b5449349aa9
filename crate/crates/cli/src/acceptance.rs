//! End-to-end acceptance criteria, shared by the `report` command and the
//! acceptance test target.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use spectral_zeta::closedform::{
    cubic_z3_minus, z1_voros, z1_zero_alpha, z2_plus_simplified, z2_zero_alpha, z_full_2_simplified,
    z_skew_2_simplified, zk2_simplified, Branch, ProblemSpec, ZetaValue,
};
use spectral_zeta::eigensolver::{solve_spectrum, Shooter, ShootingConfig};
use spectral_zeta::iom::{g1_closed, g1_integral_oracle, g_from_zetas, map_params, nu, t_series_check, IMParams};
use spectral_zeta::ptspectrum::{pt_shoot, pt_solve_spectrum, PtProblemSpec};
use spectral_zeta::specfun::{gamma, pfq_unit, pochhammer, HypergeomSpec};
use spectral_zeta::sumrules::{
    alpha_sumrule_residual, calg_gauss_reduction_residual, calg_relation_residuals, f_relation_residual,
    f_simplification_residual, fused_series_check, fused_sumrule_eval, order3_minus_from_rule, radial_sumrule_residual,
    SumRuleReport, REFERENCE_GRID,
};
use spectral_zeta::zeta_numeric::zeta_with_tail;

use crate::verify::{qw_curve, slope, GAUSS_POINTS, IOM_ORACLE_POINTS, QW_ENERGIES, T_SERIES_S};
use crate::args::Source;

pub const SPECTRUM_CASES: [(f64, f64); 4] = [(2.0, 0.5), (3.0, 0.5), (1.5, 0.5), (2.0, 0.3)];
pub const SPECTRUM_REL_TOL: f64 = 1e-5;
pub const SPECTRUM_SECONDS: f64 = 60.0;
pub const CONSTANT_REL_TOL: f64 = 1e-9;
pub const HYPSIMP_REL_TOL: f64 = 1e-7;
pub const SUMRULE_REL_TOL: f64 = 1e-7;
pub const QW_SLOPE: (f64, f64) = (4.0, 0.1);
pub const RELATION_REL_TOL: f64 = 1e-6;
pub const PT_CASES: [f64; 2] = [2.0, 1.5];
pub const PT_LEVELS: usize = 40;
pub const PT_REL_TOL: f64 = 1e-4;
pub const PT_SECONDS: f64 = 300.0;
pub const ORACLE_TOL: f64 = 1e-4;
pub const G1_REL_TOL: f64 = 1e-9;
pub const T_SLOPE: (f64, f64) = (8.0, 0.25);
pub const CALG_ALPHA: f64 = 0.3;
pub const F_SIMPLIFICATION_SIGMAS: [f64; 5] = [0.2, 0.3, 0.35, 0.4, 0.45];

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub reference: f64,
    /// Relative, absolute-scaled or absolute gap, as the criterion defines it.
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, measured: f64, reference: f64, residual: f64, tolerance: f64) -> Self {
        Check { name: name.into(), measured, reference, residual, tolerance, pass: residual <= tolerance }
    }

    fn relative(name: impl Into<String>, measured: f64, reference: f64, tolerance: f64) -> Self {
        let r = ((measured - reference) / reference).abs();
        Check::new(name, measured, reference, r, tolerance)
    }

    fn report(name: impl Into<String>, r: &SumRuleReport, tolerance: f64) -> Self {
        Check::new(name, r.lhs, r.rhs, r.rel_residual, tolerance)
    }

    fn failed(name: impl Into<String>, message: &str) -> Self {
        Check { name: format!("{}: {message}", name.into()), measured: f64::NAN, reference: f64::NAN, residual: f64::NAN, tolerance: 0.0, pass: false }
    }
}

#[derive(Debug, Clone)]
pub struct Criterion {
    pub number: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub seconds: f64,
}

impl Criterion {
    pub fn pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    /// Largest residual/tolerance ratio, the headline number of the line.
    pub fn worst(&self) -> Option<&Check> {
        self.checks.iter().max_by(|a, b| {
            let ra = if a.pass { a.residual / a.tolerance } else { f64::INFINITY };
            let rb = if b.pass { b.residual / b.tolerance } else { f64::INFINITY };
            ra.partial_cmp(&rb).unwrap_or(std::cmp::Ordering::Greater)
        })
    }

    pub fn line(&self) -> String {
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        let worst = self
            .worst()
            .map(|c| format!("worst {} residual {:.3e} tol {:.1e}", c.name, c.residual, c.tolerance))
            .unwrap_or_else(|| "no checks".into());
        format!(
            "criterion {} [{}] {}: {} checks, {} failed, {worst}, {:.1}s",
            self.number,
            if self.pass() { "PASS" } else { "FAIL" },
            self.title,
            self.checks.len(),
            failed,
            self.seconds
        )
    }
}

fn run(number: u8, title: &'static str, body: impl FnOnce(&mut Vec<Check>)) -> Criterion {
    let start = Instant::now();
    let mut checks = Vec::new();
    body(&mut checks);
    Criterion { number, title, checks, seconds: start.elapsed().as_secs_f64() }
}

fn closed(sigma: f64, lambda: f64) -> Result<Vec<ZetaValue>, String> {
    Ok(vec![
        z1_zero_alpha(sigma, lambda).map_err(|e| e.to_string())?,
        z2_zero_alpha(sigma, lambda).map_err(|e| e.to_string())?,
    ])
}

/// Z(3) from 60-level spectra for the problem at σ, λ, α = 0.
fn spectral_z3(sigma: f64, lambda: f64, branch: Branch, levels: usize) -> Result<ZetaValue, String> {
    let p = ProblemSpec::new(1.0 / sigma - 1.0, 0.0, lambda, branch).map_err(|e| e.to_string())?;
    let s = solve_spectrum(&p, levels, 1e-13).map_err(|e| e.to_string())?;
    zeta_with_tail(&s, 3).map_err(|e| e.to_string())
}

/// Z∓(1..3): closed forms for orders 1, 2 and spectra for order 3.
pub fn mixed_inputs(sigma: f64, lambda: f64, levels: usize) -> Result<(Vec<ZetaValue>, Vec<ZetaValue>), String> {
    let mut zm = closed(sigma, lambda)?;
    let mut zp = closed(sigma, -lambda)?;
    zm.push(spectral_z3(sigma, lambda, Branch::Regular, levels)?);
    zp.push(spectral_z3(sigma, lambda, Branch::Irregular, levels)?);
    Ok((zm, zp))
}

pub fn criterion_1(levels: usize) -> Criterion {
    run(1, "closed-form Z-(1), Z-(2) against spectra", |out| {
        for (m, lambda) in SPECTRUM_CASES {
            let tag = format!("M={m},lambda={lambda}");
            let start = Instant::now();
            let res = (|| -> Result<(ZetaValue, ZetaValue), String> {
                let p = ProblemSpec::new(m, 0.0, lambda, Branch::Regular).map_err(|e| e.to_string())?;
                let s = solve_spectrum(&p, levels, 1e-13).map_err(|e| e.to_string())?;
                Ok((zeta_with_tail(&s, 1).map_err(|e| e.to_string())?, zeta_with_tail(&s, 2).map_err(|e| e.to_string())?))
            })();
            let secs = start.elapsed().as_secs_f64();
            let (e1, e2) = match res {
                Ok(v) => v,
                Err(e) => {
                    out.push(Check::failed(tag, &e));
                    continue;
                }
            };
            let sigma = 1.0 / (m + 1.0);
            match closed(sigma, lambda) {
                Ok(c) => {
                    out.push(Check::relative(format!("{tag} Z-(1)"), e1.value, c[0].value, SPECTRUM_REL_TOL));
                    out.push(Check::relative(format!("{tag} Z-(2)"), e2.value, c[1].value, SPECTRUM_REL_TOL));
                }
                Err(e) => out.push(Check::failed(tag.clone(), &e)),
            }
            if lambda == 0.5 {
                if let Ok(v) = z1_voros(m, Branch::Regular) {
                    out.push(Check::relative(format!("{tag} Voros form is four times the eigenvalue sum"), v.value / e1.value, 4.0, SPECTRUM_REL_TOL));
                }
            }
            out.push(Check::new(format!("{tag} seconds"), secs, SPECTRUM_SECONDS, secs, SPECTRUM_SECONDS));
        }
    })
}

pub fn criterion_2() -> Criterion {
    run(2, "closed-form constants", |out| {
        let g = |x: f64| gamma(x).expect("gamma off its poles");
        let s5 = 5f64.sqrt();
        let s2 = 2f64.sqrt();
        let mut push = |name: &str, got: Result<f64, String>, want: f64| match got {
            Ok(v) => out.push(Check::relative(name, v, want, CONSTANT_REL_TOL)),
            Err(e) => out.push(Check::failed(name, &e)),
        };
        let cubic_plus = 8.0 * (s5 - 1.0) * PI.powi(4) / (5f64.powf(3.4) * g(0.8).powi(4) * g(0.6).powi(2));
        push("cubic Z+(2)", z2_zero_alpha(0.4, -0.5).map(|z| z.value).map_err(|e| e.to_string()), cubic_plus);
        push("cubic Z+(2) on locus", z2_plus_simplified(0.4, 1).map(|z| z.value).map_err(|e| e.to_string()), cubic_plus);
        let skew = (s2 - 1.0) * PI.powi(5) / (32.0 * g(0.75).powi(4) * g(0.875).powi(2) * g(0.625).powi(2));
        push("sextic skew Z(2)", z_skew_2_simplified(0.5).map(|z| z.value).map_err(|e| e.to_string()), skew);
        push(
            "sextic skew Z(2) from branches",
            (|| Ok(z2_zero_alpha(0.25, -0.5).map_err(|e| e.to_string())?.value - z2_zero_alpha(0.25, 0.5).map_err(|e| e.to_string())?.value))(),
            skew,
        );
        let sextic_k2 = (3.0 - 2.0 * s2) * PI.powi(5) / (16.0 * g(0.75).powi(4) * g(0.875).powi(2) * g(0.625).powi(2));
        push(
            "sextic fused K=2 order 2",
            (|| {
                let (zm, zp) = (closed(0.25, 0.5)?, closed(0.25, -0.5)?);
                fused_sumrule_eval(2, 2, &zm, &zp, 0.25, 0.5, 0.0).map(|z| z.value).map_err(|e| e.to_string())
            })(),
            sextic_k2,
        );
        let quartic = 1.5f64.powf(1.0 / 3.0) * g(2.0 / 3.0).powi(2);
        push("quartic fused K=2 order 2 at lambda=3/2", z_full_2_simplified(1.0 / 3.0, 1.5, 1).map(|z| z.value).map_err(|e| e.to_string()), quartic);
        let cubic_k1 = 16.0 * (s5 - 2.0) * PI.powi(4) / (5f64.powf(2.9) * g(0.8).powi(4) * g(0.6).powi(2));
        push(
            "cubic fused K=1 order 2",
            (|| {
                let (zm, zp) = (closed(0.4, 0.5)?, closed(0.4, -0.5)?);
                fused_sumrule_eval(1, 2, &zm, &zp, 0.4, 0.5, 0.0).map(|z| z.value).map_err(|e| e.to_string())
            })(),
            cubic_k1,
        );
        push("cubic fused K=1 order 2 on locus", zk2_simplified(0.4, 1, 1).map(|z| z.value).map_err(|e| e.to_string()), cubic_k1);
        let g2 = 32.0 * (5.0 + s5) * PI.powi(4) * g(0.6).powi(2) / (45.0 * g(0.8).powi(4));
        push(
            "G2 at beta2=2/5, p=11/10",
            (|| {
                let (zm, zp) = (closed(0.4, 5.5)?, closed(0.4, -5.5)?);
                let z: Result<Vec<f64>, String> =
                    (1..=2).map(|n| fused_sumrule_eval(1, n, &zm, &zp, 0.4, 5.5, 0.0).map(|z| z.value).map_err(|e| e.to_string())).collect();
                g_from_zetas(2, &z?, 0.4, 5.5).map_err(|e| e.to_string())
            })(),
            g2,
        );
        let route = (|| {
            let rule = order3_minus_from_rule(&closed(0.4, 0.5)?, &closed(0.4, -0.5)?, 0.4, 0.5).map_err(|e| e.to_string())?;
            let hyp = cubic_z3_minus().map_err(|e| e.to_string())?;
            Ok::<_, String>((hyp.value, rule.value))
        })();
        match route {
            Ok((hyp, rule)) => out.push(Check::relative("cubic Z-(3): 4F3 form vs order-3 rule", hyp, rule, HYPSIMP_REL_TOL)),
            Err(e) => out.push(Check::failed("cubic Z-(3)", &e)),
        }
    })
}

pub fn criterion_3(levels: usize) -> Criterion {
    run(3, "radial, fused and alpha sum rules; small-E slope", |out| {
        let inputs: Vec<_> = REFERENCE_GRID.par_iter().map(|&(s, l)| ((s, l), mixed_inputs(s, l, levels))).collect();
        for ((s, l), res) in inputs {
            let tag = format!("sigma={s},lambda={l}");
            let (zm, zp) = match res {
                Ok(v) => v,
                Err(e) => {
                    out.push(Check::failed(tag, &e));
                    continue;
                }
            };
            for order in 1..=3 {
                match radial_sumrule_residual(order, &zm, &zp, s, l) {
                    Ok(r) => out.push(Check::report(format!("{tag} radial {order}"), &r, SUMRULE_REL_TOL)),
                    Err(e) => out.push(Check::failed(format!("{tag} radial {order}"), &e.to_string())),
                }
                for k in 1..=3 {
                    match fused_series_check(k, order, &zm, &zp, s, l, 0.0) {
                        Ok((r, imag)) => {
                            let mut c = Check::report(format!("{tag} fused K={k} order {order}"), &r, SUMRULE_REL_TOL);
                            c.pass &= imag < 1e-10;
                            out.push(c);
                        }
                        Err(e) => out.push(Check::failed(format!("{tag} fused K={k} order {order}"), &e.to_string())),
                    }
                }
            }
            for a in [CALG_ALPHA, -CALG_ALPHA] {
                match alpha_sumrule_residual(s, l, a) {
                    Ok(r) => out.push(Check::report(format!("{tag} alpha={a}"), &r, SUMRULE_REL_TOL)),
                    Err(e) => out.push(Check::failed(format!("{tag} alpha={a}"), &e.to_string())),
                }
            }
        }
        match qw_curve(1.0 / 3.0, 0.4, 3, Source::ClosedForm, levels, &QW_ENERGIES) {
            Ok((curve, _)) => {
                let k = slope(&curve);
                out.push(Check::new("small-E residual slope at sigma=1/3, lambda=0.4", k, QW_SLOPE.0, (k - QW_SLOPE.0).abs(), QW_SLOPE.1));
            }
            Err(e) => out.push(Check::failed("small-E slope", e.message())),
        }
    })
}

pub fn criterion_4() -> Criterion {
    run(4, "functional relations", |out| {
        let mut push = |name: String, r: Result<SumRuleReport, String>| match r {
            Ok(r) => out.push(Check::report(name, &r, RELATION_REL_TOL)),
            Err(e) => out.push(Check::failed(name, &e)),
        };
        for (s, l) in REFERENCE_GRID {
            push(format!("5F4 relation sigma={s},lambda={l}"), f_relation_residual(s, l).map_err(|e| e.to_string()));
            match calg_relation_residuals(s, l, CALG_ALPHA) {
                Ok(rs) => {
                    for r in rs {
                        push(format!("{} sigma={s},lambda={l}", r.id), Ok(r));
                    }
                }
                Err(e) => push(format!("calg sigma={s},lambda={l}"), Err(e.to_string())),
            }
        }
        for (s, d) in GAUSS_POINTS {
            push(format!("Gauss reduction sigma={s},delta={d}"), calg_gauss_reduction_residual(s, d).map_err(|e| e.to_string()));
        }
        for s in F_SIMPLIFICATION_SIGMAS {
            for m in 1..=3 {
                push(format!("F(2-m/sigma) sigma={s},m={m}"), f_simplification_residual(s, m).map_err(|e| e.to_string()));
            }
        }
    })
}

pub fn criterion_5() -> Criterion {
    run(5, "PT shooting against fused sum rule", |out| {
        for m in PT_CASES {
            let tag = format!("M={m},K=1");
            let start = Instant::now();
            let direct = (|| {
                let p = PtProblemSpec::new(m, 1, 0.0, 0.5).map_err(|e| e.to_string())?;
                let s = pt_solve_spectrum(&p, PT_LEVELS, 1e-13).map_err(|e| e.to_string())?;
                zeta_with_tail(&s, 2).map_err(|e| e.to_string())
            })();
            let secs = start.elapsed().as_secs_f64();
            let sigma = 1.0 / (m + 1.0);
            let rule = (|| {
                let (zm, zp) = (closed(sigma, 0.5)?, closed(sigma, -0.5)?);
                fused_sumrule_eval(1, 2, &zm, &zp, sigma, 0.5, 0.0).map_err(|e| e.to_string())
            })();
            match (direct, rule) {
                (Ok(d), Ok(r)) => out.push(Check::relative(format!("{tag} fused zeta order 2"), d.value, r.value, PT_REL_TOL)),
                (Err(e), _) | (_, Err(e)) => out.push(Check::failed(tag.clone(), &e)),
            }
            out.push(Check::new(format!("{tag} seconds"), secs, PT_SECONDS, secs, PT_SECONDS));
        }
    })
}

pub fn criterion_6(levels: usize) -> Criterion {
    run(6, "integrals of motion", |out| {
        for (b, p) in IOM_ORACLE_POINTS {
            let name = format!("G1 integral beta2={b},p={p}");
            let res = (|| {
                let params = IMParams { beta2: b, p, nu: nu(b).map_err(|e| e.to_string())? };
                Ok::<_, String>((
                    g1_integral_oracle(params, 1e-9).map_err(|e| e.to_string())?,
                    g1_closed(params).map_err(|e| e.to_string())?,
                ))
            })();
            match res {
                Ok((q, c)) => out.push(Check::new(name, q, c, (q - c).abs() / c.abs().max(1.0), ORACLE_TOL)),
                Err(e) => out.push(Check::failed(name, &e)),
            }
        }
        for (s, l) in REFERENCE_GRID {
            let name = format!("G1 from zetas sigma={s},lambda={l}");
            let res = (|| {
                let (zm, zp) = (closed(s, l)?, closed(s, -l)?);
                let z1 = fused_sumrule_eval(1, 1, &zm, &zp, s, l, 0.0).map_err(|e| e.to_string())?;
                let a = g_from_zetas(1, &[z1.value], s, l).map_err(|e| e.to_string())?;
                let b = g1_closed(map_params(s, l).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                Ok::<_, String>((a, b))
            })();
            match res {
                Ok((a, b)) => out.push(Check::relative(name, a, b, G1_REL_TOL)),
                Err(e) => out.push(Check::failed(name, &e)),
            }
        }
        let (s, l) = (1.0 / 3.0, 0.4);
        let res = (|| {
            let (zm, zp) = mixed_inputs(s, l, levels)?;
            let z: Result<Vec<f64>, String> =
                (1..=3).map(|n| fused_sumrule_eval(1, n, &zm, &zp, s, l, 0.0).map(|z| z.value).map_err(|e| e.to_string())).collect();
            t_series_check(s, l, &z?, &T_SERIES_S, 1e-5).map_err(|e| e.to_string())
        })();
        match res {
            Ok(c) => out.push(Check::new("T(s) truncation slope", c.slope, T_SLOPE.0, (c.slope - T_SLOPE.0).abs(), T_SLOPE.1)),
            Err(e) => out.push(Check::failed("T(s) truncation slope", &e)),
        }
    })
}

/// Deterministic samples of the module invariants; the randomized versions
/// live in the property test targets.
pub fn criterion_7() -> Criterion {
    run(7, "invariant samples", |out| {
        let xs = [0.13, 0.37, 0.5, 0.81, 1.7, 2.45, 3.3, 6.2];
        for x in xs {
            let (Ok(g), Ok(g1)) = (gamma(x), gamma(x + 1.0)) else {
                out.push(Check::failed(format!("gamma at {x}"), "pole"));
                continue;
            };
            out.push(Check::relative(format!("gamma recurrence x={x}"), g1, x * g, 1e-13));
            if x < 1.0 {
                let refl = PI / (PI * x).sin();
                out.push(Check::relative(format!("gamma reflection x={x}"), g * gamma(1.0 - x).unwrap_or(f64::NAN), refl, 1e-13));
            }
            let dup = gamma(2.0 * x).unwrap_or(f64::NAN);
            let want = 2f64.powf(2.0 * x - 1.0) / PI.sqrt() * g * gamma(x + 0.5).unwrap_or(f64::NAN);
            out.push(Check::relative(format!("gamma duplication x={x}"), dup, want, 1e-13));
        }
        for (n, a, b, c) in [(3usize, 0.4, 1.3, 2.2), (5, 0.75, 1.6, 0.9), (7, 1.25, 2.5, 3.1)] {
            let spec = HypergeomSpec::new(vec![-(n as f64), a, b], vec![c, a + b + 0.5]);
            let brute: f64 = (0..=n)
                .map(|j| pochhammer(-(n as f64), j) * pochhammer(a, j) * pochhammer(b, j) / (pochhammer(c, j) * pochhammer(a + b + 0.5, j) * pochhammer(1.0, j)))
                .sum();
            match spec.map_err(|e| e.to_string()).and_then(|s| pfq_unit(&s, 1e-15).map_err(|e| e.to_string())) {
                Ok((v, _)) => out.push(Check::new(format!("terminating 3F2 n={n}"), v, brute, (v - brute).abs() / brute.abs().max(1.0), 1e-13)),
                Err(e) => out.push(Check::failed(format!("terminating 3F2 n={n}"), &e)),
            }
        }
        let res = (|| {
            let p = ProblemSpec::new(2.0, 0.0, 0.5, Branch::Regular).map_err(|e| e.to_string())?;
            let s = solve_spectrum(&p, 60, 1e-13).map_err(|e| e.to_string())?;
            let sh = Shooter::new(p, ShootingConfig::default());
            let mut nodes = Vec::new();
            for (k, e) in s.real_energies().iter().enumerate().take(12) {
                nodes.push((k, sh.shoot(*e).map_err(|e| e.to_string())?.nodes));
            }
            let a = zeta_with_tail(&s, 2).map_err(|e| e.to_string())?;
            let b = zeta_with_tail(&s.truncated(30), 2).map_err(|e| e.to_string())?;
            Ok::<_, String>((nodes, a, b))
        })();
        match res {
            Ok((nodes, a, b)) => {
                for (k, n) in nodes {
                    out.push(Check::new(format!("nodes of level {k}"), n as f64, k as f64, (n as f64 - k as f64).abs(), 0.0));
                }
                let err = a.err + b.err;
                out.push(Check::new("tail consistency 60 vs 30 levels", a.value, b.value, (a.value - b.value).abs() / err.max(1e-300), 1.0));
            }
            Err(e) => out.push(Check::failed("radial invariants", &e)),
        }
        for e in [Complex64::new(3.1, 0.4), Complex64::new(11.0, -1.5)] {
            let res = PtProblemSpec::new(2.0, 1, 0.0, 0.5)
                .and_then(|p| Ok((pt_shoot(&p, e)?, pt_shoot(&p, e.conj())?)))
                .map_err(|e| e.to_string());
            match res {
                Ok((w, wc)) => {
                    let gap = (w.conj() - wc).norm() / w.norm().max(1e-300);
                    out.push(Check::new(format!("PT conjugation symmetry E={e}"), wc.re, w.re, gap, 1e-9));
                }
                Err(err) => out.push(Check::failed(format!("PT conjugation E={e}"), &err)),
            }
        }
    })
}

pub fn all(levels: usize) -> Vec<Criterion> {
    vec![
        criterion_1(levels),
        criterion_2(),
        criterion_3(levels),
        criterion_4(),
        criterion_5(),
        criterion_6(levels),
        criterion_7(),
    ]
}
