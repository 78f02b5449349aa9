//! Closed-form zeta values and the trigonometric sum-rule coefficients.

use std::f64::consts::PI;

use thiserror::Error;

use crate::specfun::{
    cos_pi, gamma_ratio, pfq_unit, sin_pi, HypergeomSpec, SpecfunError,
};

const EXCLUSION_TOL: f64 = 1e-9;
const EXCLUSION_MAX_M: usize = 1000;
const PFQ_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClosedFormError {
    #[error("{what} = {value} is outside the admissible domain")]
    Domain { what: &'static str, value: f64 },
    #[error("coefficient singular: {0}")]
    SingularCoefficient(String),
    #[error("lambda = {lambda} lies in the excluded set ({reason})")]
    ExcludedLambda { lambda: f64, reason: String },
    #[error("parameters off the reduction locus: {0}")]
    OffLocus(String),
    #[error(transparent)]
    Special(#[from] SpecfunError),
}

/// Boundary behaviour at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// ψ ~ x^{½+λ}
    Regular,
    /// ψ ~ x^{½−λ}
    Irregular,
}

impl Branch {
    /// Sign s with ψ ~ x^{½+sλ}.
    pub fn sign(self) -> f64 {
        match self {
            Branch::Regular => 1.0,
            Branch::Irregular => -1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Branch::Regular => "minus",
            Branch::Irregular => "plus",
        }
    }
}

/// Radial problem −ψ'' + (x^{2M} + αx^{M−1} + (λ²−¼)/x²)ψ = Eψ on the half-line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemSpec {
    /// Anharmonic exponent M > 1.
    pub exponent: f64,
    /// Coefficient α of x^{M−1}.
    pub coupling: f64,
    /// Angular parameter λ.
    pub lambda: f64,
    pub branch: Branch,
}

impl ProblemSpec {
    pub fn new(exponent: f64, coupling: f64, lambda: f64, branch: Branch) -> Result<Self, ClosedFormError> {
        if !(exponent > 1.0) || !exponent.is_finite() {
            return Err(ClosedFormError::Domain { what: "exponent M", value: exponent });
        }
        if !coupling.is_finite() || !lambda.is_finite() {
            return Err(ClosedFormError::Domain { what: "coupling or lambda", value: f64::NAN });
        }
        check_admissible(exponent, coupling, lambda)?;
        Ok(ProblemSpec { exponent, coupling, lambda, branch })
    }

    pub fn sigma(&self) -> f64 {
        1.0 / (self.exponent + 1.0)
    }

    /// λ for the regular branch, −λ for the irregular one.
    pub fn effective_lambda(&self) -> f64 {
        self.branch.sign() * self.lambda
    }

    /// The problem with the other boundary branch.
    pub fn swapped(&self) -> Self {
        let branch = match self.branch {
            Branch::Regular => Branch::Irregular,
            Branch::Irregular => Branch::Regular,
        };
        ProblemSpec { branch, ..*self }
    }

    /// Large-k growth exponent of the eigenvalues, 2M/(M+1).
    pub fn growth_exponent(&self) -> f64 {
        2.0 * self.exponent / (self.exponent + 1.0)
    }
}

fn near_positive_integer(x: f64) -> Option<usize> {
    let r = x.round();
    if r >= 1.0 && (x - r).abs() < EXCLUSION_TOL {
        Some(r as usize)
    } else {
        None
    }
}

/// Reports why λ is excluded, if it is.
///
/// The excluded values are |λ| = ½((2m₁+1)(M+1)+α) and |λ| = m₂ + m₃(M+1)/2
/// with m₁, m₂, m₃ ≥ 1, where for α = 0 the index m₃ also takes half-integer
/// values. The search stops at m = 1000.
pub fn exclusion_reason(exponent: f64, coupling: f64, lambda: f64) -> Option<String> {
    let l = lambda.abs();
    let mp1 = exponent + 1.0;
    for m1 in 1..=EXCLUSION_MAX_M {
        let v = 0.5 * ((2 * m1 + 1) as f64 * mp1 + coupling);
        if (v - l).abs() < EXCLUSION_TOL {
            return Some(format!("first family with m = {m1}"));
        }
        if v > l + 1.0 && coupling >= 0.0 {
            break;
        }
    }
    let step = if coupling == 0.0 { 0.5 } else { 1.0 };
    for j in 1..=(2 * EXCLUSION_MAX_M) {
        let m3 = j as f64 * step;
        let rest = l - m3 * mp1 / 2.0;
        if rest < 1.0 - EXCLUSION_TOL {
            break;
        }
        if let Some(m2) = near_positive_integer(rest) {
            if m2 <= EXCLUSION_MAX_M {
                return Some(format!("second family with m2 = {m2}, m3 = {m3}"));
            }
        }
    }
    None
}

pub fn check_admissible(exponent: f64, coupling: f64, lambda: f64) -> Result<(), ClosedFormError> {
    match exclusion_reason(exponent, coupling, lambda) {
        Some(reason) => Err(ClosedFormError::ExcludedLambda { lambda, reason }),
        None => Ok(()),
    }
}

fn check_admissible_sigma(sigma: f64, coupling: f64, lambda: f64) -> Result<(), ClosedFormError> {
    check_admissible(1.0 / sigma - 1.0, coupling, lambda)
}

/// Provenance of a zeta value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaMethod {
    ClosedForm,
    EigSum,
    SumRule,
}

impl ZetaMethod {
    pub fn label(self) -> &'static str {
        match self {
            ZetaMethod::ClosedForm => "closed-form",
            ZetaMethod::EigSum => "eig-sum",
            ZetaMethod::SumRule => "sum-rule",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue {
    pub order: u32,
    pub value: f64,
    pub err: f64,
    pub method: ZetaMethod,
}

impl ZetaValue {
    pub fn closed(order: u32, value: f64, err: f64) -> Self {
        ZetaValue { order, value, err: err.max(4.0 * f64::EPSILON * value.abs()), method: ZetaMethod::ClosedForm }
    }

    pub fn relative_err(&self) -> f64 {
        self.err / self.value.abs()
    }
}

/// σ = 1/(M+1).
pub fn sigma_of(exponent: f64) -> Result<f64, ClosedFormError> {
    if !(exponent > 1.0) || !exponent.is_finite() {
        return Err(ClosedFormError::Domain { what: "exponent M", value: exponent });
    }
    Ok(1.0 / (exponent + 1.0))
}

fn sine_ratio(scale: f64, a: i32, lambda: f64) -> Result<f64, ClosedFormError> {
    let den = sin_pi(scale * lambda);
    if den.abs() < 1e-14 {
        return Err(ClosedFormError::SingularCoefficient(format!(
            "sin(pi * {scale} * {lambda}) vanishes"
        )));
    }
    Ok(sin_pi(scale * (lambda + a as f64)) / den)
}

/// N_a = sin(πσ(λ+a)) / sin(πσλ).
pub fn n_coeff(a: i32, sigma: f64, lambda: f64) -> Result<f64, ClosedFormError> {
    sine_ratio(sigma, a, lambda)
}

/// L_a = sin(πσ(K+1)(λ+a)) / sin(πσ(K+1)λ); K = 0 gives N_a.
pub fn l_coeff(a: i32, sigma: f64, lambda: f64, k: u32) -> Result<f64, ClosedFormError> {
    sine_ratio(sigma * (k + 1) as f64, a, lambda)
}

/// Voros-form Z∓(1) for the pure anharmonic problem at λ = ½, as printed:
/// σ^{2−2σ}Γ(σ(1±½))Γ(σ)Γ(½−σ)/(√π Γ(1−σ(1∓½))).
///
/// This is four times the eigenvalue sum Σ 1/E_k of the half-line problem;
/// [`z1_zero_alpha`] at λ = ±½ carries the matching normalization.
pub fn z1_voros(exponent: f64, branch: Branch) -> Result<ZetaValue, ClosedFormError> {
    let sigma = sigma_of(exponent)?;
    let h = 0.5 * branch.sign();
    let g = gamma_ratio(&[sigma * (1.0 + h), sigma, 0.5 - sigma], &[1.0 - sigma * (1.0 - h)])?;
    let value = sigma.powf(2.0 - 2.0 * sigma) * g / PI.sqrt();
    Ok(ZetaValue::closed(1, value, 0.0))
}

/// Z₋(1) at α = 0: σ^{2−2σ}Γ(σ(1+λ))Γ(σ)Γ(½−σ)/(4√π Γ(1−σ(1−λ))).
/// Pass −λ for the irregular branch.
pub fn z1_zero_alpha(sigma: f64, lambda: f64) -> Result<ZetaValue, ClosedFormError> {
    check_sigma(sigma)?;
    let g = gamma_ratio(&[sigma * (1.0 + lambda), sigma, 0.5 - sigma], &[1.0 - sigma * (1.0 - lambda)])?;
    let value = sigma.powf(2.0 - 2.0 * sigma) * g / (4.0 * PI.sqrt());
    Ok(ZetaValue::closed(1, value, 0.0))
}

fn check_sigma(sigma: f64) -> Result<(), ClosedFormError> {
    if sigma > 0.0 && sigma < 0.5 {
        Ok(())
    } else {
        Err(ClosedFormError::Domain { what: "sigma", value: sigma })
    }
}

/// The ₃F₂ shared by Z₋(1, α) and 𝒢(α, λ), with first parameter
/// ½ + σα/2 + σλ.
pub fn three_f_two(sigma: f64, lambda: f64, alpha: f64) -> Result<(f64, f64), ClosedFormError> {
    let a = 0.5 + 0.5 * sigma * alpha + sigma * lambda;
    let spec = HypergeomSpec::new(
        vec![a, 2.0 * sigma * (1.0 + lambda), 2.0 * sigma],
        vec![1.0 + 2.0 * sigma * lambda, a + 2.0 * sigma],
    )?;
    Ok(pfq_unit(&spec, PFQ_TOL)?)
}

/// Z₋(1) for general coupling α via the ₃F₂ form. Pass −λ for the
/// irregular branch.
pub fn z1_general_alpha(sigma: f64, lambda: f64, alpha: f64) -> Result<ZetaValue, ClosedFormError> {
    check_sigma(sigma)?;
    check_admissible_sigma(sigma, alpha, lambda)?;
    let a = 0.5 + 0.5 * sigma * alpha + sigma * lambda;
    let g = gamma_ratio(
        &[a, 2.0 * sigma * (1.0 + lambda), 2.0 * sigma],
        &[1.0 + 2.0 * sigma * lambda, a + 2.0 * sigma],
    )?;
    let pre = sigma.powf(2.0 - 2.0 * sigma) * 4f64.powf(-sigma) * g;
    let (f, ferr) = three_f_two(sigma, lambda, alpha)?;
    Ok(ZetaValue::closed(1, pre * f, (pre * ferr).abs() + 8.0 * f64::EPSILON * (pre * f).abs()))
}

/// The ₅F₄ appearing in Z₋(2) at α = 0.
pub fn five_f_four(sigma: f64, lambda: f64) -> Result<(f64, f64), ClosedFormError> {
    let sl = sigma * lambda;
    let spec = HypergeomSpec::new(
        vec![0.5 + sl, 2.0 * sigma * (1.0 + lambda), sigma * (2.0 + lambda), 2.0 * sigma, sigma * (1.0 + lambda)],
        vec![1.0 + sl, 1.0 + 2.0 * sl, 0.5 + sigma * (2.0 + lambda), 1.0 + sigma * (1.0 + lambda)],
    )?;
    Ok(pfq_unit(&spec, PFQ_TOL)?)
}

/// Z₋(2) at α = 0. Pass −λ for the irregular branch.
pub fn z2_zero_alpha(sigma: f64, lambda: f64) -> Result<ZetaValue, ClosedFormError> {
    check_sigma(sigma)?;
    if (1.0 + lambda).abs() < 1e-14 {
        return Err(ClosedFormError::SingularCoefficient("1 + lambda vanishes".into()));
    }
    let sl = sigma * lambda;
    let g = gamma_ratio(
        &[2.0 * sigma * (1.0 + lambda), sigma * (2.0 + lambda), 2.0 * sigma],
        &[1.0 + sl, 1.0 + sl, 0.5 + sigma * (2.0 + lambda)],
    )?;
    let pre = PI.sqrt() * sigma.powf(3.0 - 4.0 * sigma) * 4f64.powf(-1.0 - sl) / (1.0 + lambda) * g;
    let (f, ferr) = five_f_four(sigma, lambda)?;
    Ok(ZetaValue::closed(2, pre * f, (pre * ferr).abs() + 8.0 * f64::EPSILON * (pre * f).abs()))
}

/// Z₊(2) on the locus σ = m/(λ+2), where the ₅F₄ collapses.
pub fn z2_plus_simplified(sigma: f64, m: u32) -> Result<ZetaValue, ClosedFormError> {
    check_sigma(sigma)?;
    if m == 0 {
        return Err(ClosedFormError::OffLocus("m must be positive".into()));
    }
    let lambda = m as f64 / sigma - 2.0;
    check_admissible_sigma(sigma, 0.0, lambda)?;
    let s4 = sin_pi(4.0 * sigma);
    let s3 = sin_pi(3.0 * sigma);
    if s4.abs() < 1e-14 || s3.abs() < 1e-14 {
        return Err(ClosedFormError::SingularCoefficient("sin(4 pi sigma) or sin(3 pi sigma) vanishes".into()));
    }
    let mf = m as f64;
    let g = gamma_ratio(
        &[sigma, sigma, sigma, sigma, 1.0 - 2.0 * sigma, 1.0 - 2.0 * sigma],
        &[1.0 - 3.0 * sigma + mf, 1.0 - 3.0 * sigma + mf, 1.0 + sigma - mf, 1.0 + sigma - mf],
    )?;
    let trig = sin_pi(2.0 * sigma).powi(3) / (s3 * s3 * s4);
    let value = -(sigma / 2.0).powf(4.0 - 4.0 * sigma) * g * trig;
    Ok(ZetaValue::closed(2, value, 0.0))
}

/// Full zeta Z(2) = Z₊(2) + Z₋(2) on the locus σ = (2m−1)/(2λ).
pub fn z_full_2_simplified(sigma: f64, lambda: f64, m: u32) -> Result<ZetaValue, ClosedFormError> {
    check_sigma(sigma)?;
    if lambda == 0.0 {
        return Err(ClosedFormError::SingularCoefficient("lambda = 0".into()));
    }
    if m == 0 || (sigma - (2 * m - 1) as f64 / (2.0 * lambda)).abs() > 1e-12 {
        return Err(ClosedFormError::OffLocus(format!(
            "sigma = {sigma} is not (2m-1)/(2 lambda) for m = {m}, lambda = {lambda}"
        )));
    }
    let c1 = cos_pi(sigma);
    let c2 = cos_pi(2.0 * sigma);
    if c1.abs() < 1e-14 || c2.abs() < 1e-14 {
        return Err(ClosedFormError::SingularCoefficient("sec(pi sigma) or sec(2 pi sigma) singular".into()));
    }
    let mf = m as f64;
    let g = gamma_ratio(
        &[1.0 - 2.0 * sigma, 1.0 - 2.0 * sigma],
        &[1.0 - sigma, 1.0 - sigma, 1.0 - sigma, 1.0 - sigma, 1.5 - sigma - mf, 1.5 - sigma - mf, 0.5 - sigma + mf, 0.5 - sigma + mf],
    )?;
    let value = -PI.powi(4) * sigma.powf(4.0 - 4.0 * sigma) * 4f64.powf(2.0 * sigma - 1.0) * g / (c1 * c1 * c2);
    Ok(ZetaValue::closed(2, value, 0.0))
}

/// Skew zeta Z̃(2) = Z₊(2) − Z₋(2) at σ = 1/4 (sextic).
pub fn z_skew_2_simplified(lambda: f64) -> Result<ZetaValue, ClosedFormError> {
    let c = cos_pi(lambda / 2.0);
    if c.abs() < 1e-14 {
        return Err(ClosedFormError::SingularCoefficient("sec(pi lambda / 2) singular".into()));
    }
    let tan = sin_pi(lambda / 4.0) / cos_pi(lambda / 4.0);
    let g = gamma_ratio(&[], &[0.75, 0.75, 0.75, 0.75, (3.0 + lambda) / 4.0, (3.0 + lambda) / 4.0, (3.0 - lambda) / 4.0, (3.0 - lambda) / 4.0])?;
    let value = PI.powi(5) * tan / (64.0 * c * c) * g;
    Ok(ZetaValue::closed(2, value, 0.0))
}

/// 𝒵_K(2) for the PT problems on the locus λ = m/σ − 2 at α = 0.
pub fn zk2_simplified(sigma: f64, m: u32, k: u32) -> Result<ZetaValue, ClosedFormError> {
    check_sigma(sigma)?;
    if m == 0 || k == 0 {
        return Err(ClosedFormError::OffLocus("m and K must be positive".into()));
    }
    let kk = (k + 1) as f64;
    let mf = m as f64;
    let s1 = sin_pi(sigma);
    let s3 = sin_pi(3.0 * sigma);
    let sk = sin_pi(sigma * kk);
    let s2k = sin_pi(2.0 * sigma * kk);
    let s4k = sin_pi(4.0 * sigma * kk);
    let c2 = cos_pi(2.0 * sigma);
    let d = 1.0 + 2.0 * c2;
    if [s1, s3, s2k, c2, d].iter().any(|v| v.abs() < 1e-14) {
        return Err(ClosedFormError::SingularCoefficient("trigonometric factor vanishes".into()));
    }
    let g = gamma_ratio(
        &[1.0 - 2.0 * sigma, 1.0 - 2.0 * sigma],
        &[1.0 + sigma - mf, 1.0 + sigma - mf, 1.0 - 3.0 * sigma + mf, 1.0 - 3.0 * sigma + mf, 1.0 - sigma, 1.0 - sigma, 1.0 - sigma, 1.0 - sigma],
    )?;
    let pre = PI.powi(4) * sigma.powf(4.0 - 4.0 * sigma) * g / (s1 * s1 * 16f64.powf(1.0 - sigma));
    let csum = 1.0 / s3 + 1.0 / s1;
    let t1 = csum * csum * sk * sk / (s2k * s2k);
    let t2 = s4k * (1.0 + 1.0 / c2) / (d * d * s1 * s1 * s2k);
    Ok(ZetaValue::closed(2, pre * (t1 - t2), 0.0))
}

/// Z₋(3) of the cubic oscillator (M = 3/2, λ = ½, α = 0) in its
/// ₄F₃ form.
pub fn cubic_z3_minus() -> Result<ZetaValue, ClosedFormError> {
    let five = 5f64;
    let t1 = 2f64.powf(2.8) * 3.0 * PI.powf(4.5) * gamma_ratio(&[0.7], &[0.8, 0.8, 0.8, 0.8, 0.8, 0.9, 0.9])? / five.powf(4.6);
    let t2 = 32.0 * PI.powi(6) * gamma_ratio(&[], &[0.8, 0.8, 0.8, 0.8, 0.8, 0.8, 0.6, 0.6, 0.6])? / five.powf(5.1);
    let spec = HypergeomSpec::new(vec![0.6, 0.7, 0.8, 1.0], vec![1.4, 1.5, 1.6])?;
    let (f, ferr) = pfq_unit(&spec, PFQ_TOL)?;
    let c3 = 2.0 * PI * (5.0 - 2.0 * five.sqrt()).sqrt() * gamma_ratio(&[], &[0.6])? / five.powf(2.1);
    let value = t1 - t2 - c3 * f;
    Ok(ZetaValue::closed(3, value, (c3 * ferr).abs() + 16.0 * f64::EPSILON * (t1.abs() + t2.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn cubic_z2_plus() -> f64 {
        8.0 * (5f64.sqrt() - 1.0) * PI.powi(4)
            / (5f64.powf(17.0 / 5.0) * gamma(0.8).unwrap().powi(4) * gamma(0.6).unwrap().powi(2))
    }

    #[test]
    fn sigma_values() {
        assert!((sigma_of(2.0).unwrap() - 1.0 / 3.0).abs() < 1e-16);
        assert!((sigma_of(3.0).unwrap() - 0.25).abs() < 1e-16);
        assert!((sigma_of(1.5).unwrap() - 0.4).abs() < 1e-16);
        assert!(sigma_of(1.0).is_err());
    }

    #[test]
    fn coefficients() {
        assert_eq!(n_coeff(0, 0.3, 0.4).unwrap(), 1.0);
        assert!((n_coeff(1, 1.0 / 3.0, 0.5).unwrap() - 2.0).abs() < 1e-14);
        assert!(n_coeff(2, 1.0 / 3.0, 1.0).unwrap().abs() < 1e-14);
        assert!(l_coeff(1, 1.0 / 3.0, 0.5, 1).unwrap().abs() < 1e-14);
        assert_eq!(l_coeff(3, 0.3, 0.4, 0).unwrap(), n_coeff(3, 0.3, 0.4).unwrap());
        assert!(matches!(n_coeff(1, 0.25, 4.0), Err(ClosedFormError::SingularCoefficient(_))));
    }

    #[test]
    fn voros_form_is_four_times_half_line_sum() {
        for m in [1.5, 2.0, 3.0, 4.5] {
            let s = sigma_of(m).unwrap();
            let v = z1_voros(m, Branch::Regular).unwrap().value;
            let z = z1_zero_alpha(s, 0.5).unwrap().value;
            assert!(rel(v, 4.0 * z) < 1e-14);
            let v = z1_voros(m, Branch::Irregular).unwrap().value;
            let z = z1_zero_alpha(s, -0.5).unwrap().value;
            assert!(rel(v, 4.0 * z) < 1e-14);
        }
    }

    #[test]
    fn quartic_and_sextic_reference_values() {
        // 40-digit evaluations of the closed forms
        assert!(rel(z1_zero_alpha(1.0 / 3.0, 0.5).unwrap().value, 0.763302934773473) < 1e-13);
        assert!(rel(z2_zero_alpha(1.0 / 3.0, 0.5).unwrap().value, 0.0815825148853846) < 1e-12);
        assert!(rel(z1_zero_alpha(0.25, 0.5).unwrap().value, 0.504170627648632) < 1e-13);
        assert!(rel(z2_zero_alpha(0.25, 0.5).unwrap().value, 0.0598984294600300) < 1e-12);
        assert!(rel(z1_zero_alpha(0.4, 0.5).unwrap().value, 1.2678929990052399) < 1e-13);
        assert!(rel(z1_zero_alpha(0.4, -0.5).unwrap().value, 2.0514939664885148) < 1e-13);
    }

    #[test]
    fn dixon_reduction() {
        for (s, l, want) in [(0.3, 0.4, 0.66317970230791703), (0.45, 0.3, 2.5888567190540246)] {
            let a = z1_general_alpha(s, l, 0.0).unwrap();
            let b = z1_zero_alpha(s, l).unwrap();
            assert!(rel(a.value, b.value) < 1e-10, "{} vs {}", a.value, b.value);
            assert!(rel(b.value, want) < 1e-13);
        }
    }

    #[test]
    fn cubic_plus_two() {
        let want = cubic_z2_plus();
        assert!(rel(want, 0.99352218068577687) < 1e-14);
        assert!(rel(z2_zero_alpha(0.4, -0.5).unwrap().value, want) < 1e-10);
        assert!(rel(z2_plus_simplified(0.4, 1).unwrap().value, want) < 1e-13);
    }

    #[test]
    fn plus_two_locus_matches_general_form() {
        for (s, m) in [(0.4, 2), (0.3, 1), (0.45, 1)] {
            let l = m as f64 / s - 2.0;
            let a = z2_plus_simplified(s, m).unwrap().value;
            let b = z2_zero_alpha(s, -l).unwrap().value;
            assert!(rel(a, b) < 1e-9, "sigma {s} m {m}: {a} vs {b}");
        }
        assert!(matches!(z2_plus_simplified(0.4, 3), Err(ClosedFormError::ExcludedLambda { .. })));
    }

    #[test]
    fn skew_sextic() {
        let want = (2f64.sqrt() - 1.0) * PI.powi(5)
            / (32.0
                * gamma(0.75).unwrap().powi(4)
                * gamma(7.0 / 8.0).unwrap().powi(2)
                * gamma(5.0 / 8.0).unwrap().powi(2));
        assert!(rel(want, 0.71895229559835266) < 1e-14);
        assert!(rel(z_skew_2_simplified(0.5).unwrap().value, want) < 1e-14);
        let general = z2_zero_alpha(0.25, -0.5).unwrap().value - z2_zero_alpha(0.25, 0.5).unwrap().value;
        assert!(rel(general, want) < 1e-10);
        let general = z2_zero_alpha(0.25, -0.7).unwrap().value - z2_zero_alpha(0.25, 0.7).unwrap().value;
        assert!(rel(z_skew_2_simplified(0.7).unwrap().value, general) < 1e-9);
    }

    #[test]
    fn full_form_on_locus() {
        // λ = 1.2, m = 1; the general route is evaluated symmetrically
        // around the locus because each branch has a removable pole there.
        let l: f64 = 1.2;
        let s = 1.0 / (2.0 * l);
        let want = z_full_2_simplified(s, l, 1).unwrap().value;
        let full = |h: f64| {
            let ll = l + h;
            0.5 * (z2_zero_alpha(s, ll).unwrap().value + z2_zero_alpha(s, -ll).unwrap().value)
                + 0.5 * (z2_zero_alpha(s, l - h).unwrap().value + z2_zero_alpha(s, -(l - h)).unwrap().value)
        };
        let h = 1e-4;
        let rich = (4.0 * full(h / 2.0) - full(h)) / 3.0;
        assert!(rel(rich, want) < 1e-9, "{rich} vs {want}");
        assert!(z_full_2_simplified(s, 0.0, 1).is_err());
        assert!(matches!(z_full_2_simplified(0.3, 1.2, 1), Err(ClosedFormError::OffLocus(_))));
    }

    #[test]
    fn quartic_example_on_full_locus() {
        let want = 1.5f64.powf(1.0 / 3.0) * gamma(2.0 / 3.0).unwrap().powi(2);
        assert!(rel(want, 2.0989885510202043) < 1e-14);
        let got = z_full_2_simplified(1.0 / 3.0, 1.5, 1).unwrap().value;
        assert!(rel(got, want) < 1e-13);
    }

    #[test]
    fn pt_locus_values() {
        let cubic = 16.0 * (5f64.sqrt() - 2.0) * PI.powi(4)
            / (5f64.powf(2.9) * gamma(0.8).unwrap().powi(4) * gamma(0.6).unwrap().powi(2));
        assert!(rel(cubic, 0.84856924803639638) < 1e-14);
        assert!(rel(zk2_simplified(0.4, 1, 1).unwrap().value, cubic) < 1e-13);
    }

    #[test]
    fn exclusion_set() {
        // α = 0 admits half-integer m₃: λ = 1 + ½·(3/2) for M = 2.
        assert!(exclusion_reason(2.0, 0.0, 1.75).is_some());
        assert!(exclusion_reason(2.0, 0.0, 1.5).is_none());
        assert!(exclusion_reason(2.0, 0.0, 0.5).is_none());
        assert!(exclusion_reason(1.5, 0.0, 5.5).is_some());
        assert!(exclusion_reason(1.5, 0.0, -5.5).is_some());
        // first family: ½(3·3 + 0.4) = 4.7 at M = 2
        assert!(exclusion_reason(2.0, 0.4, 4.7).is_some());
        assert!(exclusion_reason(2.0, 0.4, 1.75).is_none());
        assert!(ProblemSpec::new(2.0, 0.0, 1.75, Branch::Regular).is_err());
        assert!(ProblemSpec::new(1.0, 0.0, 0.5, Branch::Regular).is_err());
        assert!(z1_general_alpha(1.0 / 3.0, 1.75, 0.0).is_err());
    }

    #[test]
    fn general_alpha_finite() {
        let z = z1_general_alpha(0.3, 0.4, 0.2).unwrap();
        assert!(z.value.is_finite() && z.err > 0.0 && z.err < 1e-10 * z.value.abs());
    }
}
