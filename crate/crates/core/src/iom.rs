//! Vacuum nonlocal integrals of motion G₁–G₃ of the perturbed boundary
//! problem, obtained from the fused zeta values 𝒵₁(n) through T(s) = C₁(−νs²).

use std::f64::consts::PI;

use thiserror::Error;

use crate::closedform::{z1_zero_alpha, ClosedFormError};
use crate::quadrature::tanh_sinh;
use crate::specfun::{cos_pi, gamma, gamma_ratio, sin_pi, SpecfunError};
use crate::sumrules::{Provenance, SumRuleReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IomError {
    #[error("parameter {name} = {value} outside its domain")]
    DomainError { name: &'static str, value: f64 },
    #[error("gamma function pole: {0}")]
    Pole(#[from] SpecfunError),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
    #[error("coefficient {what} is singular")]
    SingularCoefficient { what: &'static str },
    #[error("{needed} zeta values needed, {given} given")]
    MissingOrder { needed: usize, given: usize },
    #[error("only G₁, G₂ and G₃ are available (asked for G_{0})")]
    UnsupportedOrder(usize),
    #[error("quadrature error estimate {err:e} above tolerance {tol:e}")]
    QuadratureFailure { err: f64, tol: f64 },
    #[error("s = {s} too large for the truncated expansion (|νs²𝒵| = {size})")]
    TruncationDominated { s: f64, size: f64 },
}

/// Boundary-theory parameters matched to an oscillator with σ = 1/(M+1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IMParams {
    pub beta2: f64,
    pub p: f64,
    pub nu: f64,
}

impl IMParams {
    pub fn sigma(&self) -> f64 {
        self.beta2
    }

    pub fn lambda(&self) -> f64 {
        2.0 * self.p / self.beta2
    }

    /// T(0) = 2cos(2πp).
    pub fn t_zero(&self) -> f64 {
        2.0 * cos_pi(2.0 * self.p)
    }
}

/// ν = (σ/2)^{2σ−2} Γ²(1−σ).
pub fn nu(sigma: f64) -> Result<f64, IomError> {
    let g = gamma(1.0 - sigma)?;
    Ok((0.5 * sigma).powf(2.0 * sigma - 2.0) * g * g)
}

pub fn map_params(sigma: f64, lambda: f64) -> Result<IMParams, IomError> {
    if !(sigma > 0.0 && sigma < 0.5) {
        return Err(IomError::DomainError { name: "sigma", value: sigma });
    }
    if !lambda.is_finite() {
        return Err(IomError::DomainError { name: "lambda", value: lambda });
    }
    Ok(IMParams { beta2: sigma, p: 0.5 * sigma * lambda, nu: nu(sigma)? })
}

/// G₁ = 4π² Γ(1−2β²) / (Γ(1−β²−2p) Γ(1−β²+2p)).
pub fn g1_closed(params: IMParams) -> Result<f64, IomError> {
    let b = params.beta2;
    let p = params.p;
    if is_nonpositive_integer(1.0 - 2.0 * b) {
        return Err(IomError::Pole(SpecfunError::PoleError { x: 1.0 - 2.0 * b }));
    }
    let r = gamma_ratio(&[1.0 - 2.0 * b], &[1.0 - b - 2.0 * p, 1.0 - b + 2.0 * p])?;
    Ok(4.0 * PI * PI * r)
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && (x - x.round()).abs() < 1e-14
}

/// G_n for n = 1, 2, 3 from 𝒵₁(1..n), read off T(s) = 2cos(πσλ) exp(−Σ 𝒵₁(m)(−νs²)^m/m).
pub fn g_from_zetas(n: usize, z1: &[f64], sigma: f64, lambda: f64) -> Result<f64, IomError> {
    if !(1..=3).contains(&n) {
        return Err(IomError::UnsupportedOrder(n));
    }
    if z1.len() < n {
        return Err(IomError::MissingOrder { needed: n, given: z1.len() });
    }
    let nu = nu(sigma)?;
    let c = cos_pi(sigma * lambda);
    Ok(match n {
        1 => 2.0 * nu * c * z1[0],
        2 => nu * nu * c * (z1[0] * z1[0] - z1[1]),
        _ => nu.powi(3) * c * (z1[0].powi(3) + 2.0 * z1[2] - 3.0 * z1[1] * z1[0]) / 3.0,
    })
}

/// G₂ written as a Γ/trigonometric block plus a block linear in Z∓(2).
pub fn g2_explicit(sigma: f64, lambda: f64, z2_minus: f64, z2_plus: f64) -> Result<f64, IomError> {
    let s2 = sin_pi(2.0 * sigma * lambda);
    if s2.abs() < 1e-14 {
        return Err(IomError::SingularCoefficient { what: "1/sin(2πσλ)" });
    }
    let c = cos_pi(sigma * lambda);
    if c.abs() < 1e-14 {
        return Err(IomError::SingularCoefficient { what: "sec(πσλ)" });
    }
    let sm = sin_pi(sigma * (1.0 - lambda));
    let sp = sin_pi(sigma * (1.0 + lambda));
    if sm == 0.0 || sp == 0.0 {
        return Err(IomError::SingularCoefficient { what: "1/sin(πσ(1±λ))" });
    }
    let r = gamma_ratio(
        &[1.0 - 2.0 * sigma, 1.0 - 2.0 * sigma],
        &[
            1.0 - sigma * (1.0 - lambda),
            1.0 - sigma * (1.0 - lambda),
            1.0 - sigma * (1.0 + lambda),
            1.0 - sigma * (1.0 + lambda),
        ],
    )?;
    let cs = cos_pi(sigma);
    let first = 4.0 * PI.powi(4) * r / c * (1.0 - cs.powi(4) / (sm * sm * sp * sp));
    let nu = nu(sigma)?;
    let second = nu * nu
        * c
        * (sin_pi(2.0 * sigma * (2.0 - lambda)) / s2 * z2_plus - sin_pi(2.0 * sigma * (2.0 + lambda)) / s2 * z2_minus);
    Ok(first + second)
}

/// G₁ = 2∫₀^{2π} (2π−w) cos(2p(π−w)) [2 sin(w/2)]^{−2β²} dw, the double
/// integral reduced to the separation w of its two points.
pub fn g1_integral_oracle(params: IMParams, tol: f64) -> Result<f64, IomError> {
    let b = params.beta2;
    if !(b > 0.0 && b < 0.5) {
        return Err(IomError::DomainError { name: "beta2", value: b });
    }
    let two_pi = 2.0 * PI;
    let f = |w: f64, da: f64, db: f64| {
        let half = if da < db { 0.5 * da } else { 0.5 * db };
        let chord = 2.0 * half.sin();
        db * (2.0 * params.p * (PI - w)).cos() * chord.powf(-2.0 * b)
    };
    let (val, err) = tanh_sinh(f, 0.0, two_pi, 0.25 * tol);
    if !(err <= tol) || !val.is_finite() {
        return Err(IomError::QuadratureFailure { err, tol });
    }
    Ok(2.0 * val)
}

/// |T(0)(exp(y) − 1) − Σ_{n≤3} G_n s^{2n}| with y = −Σ_{m≤3} 𝒵₁(m)(−νs²)^m/m.
pub fn t_series_residual(sigma: f64, lambda: f64, z1: &[f64], s: f64) -> Result<f64, IomError> {
    if z1.len() < 3 {
        return Err(IomError::MissingOrder { needed: 3, given: z1.len() });
    }
    let nu = nu(sigma)?;
    let x = -nu * s * s;
    let size = (0..3).map(|m| (z1[m].abs()).powf(1.0 / (m + 1) as f64)).fold(0.0, f64::max) * x.abs();
    if size > 0.5 {
        return Err(IomError::TruncationDominated { s, size });
    }
    let y = -(z1[0] * x + z1[1] * x * x / 2.0 + z1[2] * x.powi(3) / 3.0);
    let t0 = 2.0 * cos_pi(sigma * lambda);
    let mut series = 0.0;
    for n in (1..=3).rev() {
        series = (series + g_from_zetas(n, z1, sigma, lambda)?) * s * s;
    }
    Ok((t0 * y.exp_m1() - series).abs())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TSeriesCheck {
    /// Residual at the largest s of the grid, against `tolerance`.
    pub report: SumRuleReport,
    pub residuals: Vec<(f64, f64)>,
    /// Least-squares slope of ln residual against ln s; 8 when the
    /// truncation dominates rounding.
    pub slope: f64,
}

pub fn t_series_check(sigma: f64, lambda: f64, z1: &[f64], s_grid: &[f64], tolerance: f64) -> Result<TSeriesCheck, IomError> {
    let t0 = 2.0 * cos_pi(sigma * lambda);
    let mut residuals = Vec::with_capacity(s_grid.len());
    for &s in s_grid {
        residuals.push((s, t_series_residual(sigma, lambda, z1, s)?));
    }
    let floor = 1e3 * f64::EPSILON * t0.abs().max(1.0);
    let pts: Vec<(f64, f64)> = residuals
        .iter()
        .filter(|(s, r)| *s > 0.0 && *r > floor)
        .map(|(s, r)| (s.ln(), r.ln()))
        .collect();
    let slope = if pts.len() >= 2 {
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    } else {
        f64::NAN
    };
    let (s_max, r_max) = residuals.iter().copied().fold((0.0, 0.0), |a, b| if b.0 >= a.0 { b } else { a });
    let exact = t0 + (1..=3).try_fold(0.0, |acc, n| g_from_zetas(n, z1, sigma, lambda).map(|g| acc + g * s_max.powi(2 * n as i32)))?;
    let report = SumRuleReport::new(
        "t-series",
        exact,
        exact + r_max,
        t0,
        tolerance,
        Provenance::ClosedForm,
    );
    Ok(TSeriesCheck { report, residuals, slope })
}

/// G₁ from closed-form Z∓(1) through the fused rule, for cross-checks.
pub fn g1_from_closed_zetas(sigma: f64, lambda: f64) -> Result<f64, IomError> {
    let zm = z1_zero_alpha(sigma, lambda)?;
    let zp = z1_zero_alpha(sigma, -lambda)?;
    let z = crate::sumrules::fused_sumrule_eval(1, 1, &[zm], &[zp], sigma, lambda, 0.0)
        .map_err(|_| IomError::SingularCoefficient { what: "fused coefficient" })?
        .value;
    g_from_zetas(1, &[z], sigma, lambda)
}
