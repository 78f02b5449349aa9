//! PT-symmetric spectra by two-ray complex shooting.
//!
//! The problem −φ'' + (−1)^K (ix)^{2M} φ = Eφ (α = 0, λ = ½) is integrated
//! inward along two rays x = x_c + ρ e^{iθ±} on which the potential is real
//! and positive at large ρ. The rays start from a point x_c on the negative
//! imaginary axis where the anti-Stokes line joining the two complex turning
//! points crosses it; there neither WKB exponential dominates, so the
//! matching Wronskian stays well conditioned at large E.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::eigensolver::EigenError;
use crate::magnus::{integrate, MagnusConfig};
use crate::roots::brent;
use crate::specfun::gamma;
use crate::spectrum::{Level, Spectrum, SpectrumMethod, SpectrumProblem};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtProblemSpec {
    pub exponent: f64,
    /// Fusion level K ≥ 1.
    pub k: u32,
    pub coupling: f64,
    pub lambda: f64,
}

impl PtProblemSpec {
    pub fn new(exponent: f64, k: u32, coupling: f64, lambda: f64) -> Result<Self, EigenError> {
        if !(exponent > 1.0) || !exponent.is_finite() {
            return Err(EigenError::Unsupported(format!("exponent {exponent} must exceed 1")));
        }
        if k == 0 {
            return Err(EigenError::Unsupported("K must be positive".into()));
        }
        Ok(PtProblemSpec { exponent, k, coupling, lambda })
    }

    pub fn ray_angles(&self) -> (f64, f64) {
        anti_stokes_angles(self.exponent, self.k)
    }

    /// Whether both rays lie strictly in the lower half plane.
    pub fn rays_avoid_cut(&self) -> bool {
        let (l, r) = self.ray_angles();
        l > -PI && r < 0.0
    }

    /// Direct shooting needs α = 0, λ = ½ and both rays in (−π, 0).
    pub fn check_direct(&self) -> Result<(), EigenError> {
        if self.coupling != 0.0 || (self.lambda - 0.5).abs() > 1e-15 {
            return Err(EigenError::Unsupported("direct shooting needs alpha = 0 and lambda = 1/2".into()));
        }
        if !self.rays_avoid_cut() {
            return Err(EigenError::Unsupported(format!("K = {} reaches the branch cut for M = {}", self.k, self.exponent)));
        }
        Ok(())
    }
}

/// Ray arguments −π/2 ∓ π(K+1)/(2M+2), left first.
pub fn anti_stokes_angles(exponent: f64, k: u32) -> (f64, f64) {
    let d = PI * (k + 1) as f64 / (2.0 * exponent + 2.0);
    (-PI / 2.0 - d, -PI / 2.0 + d)
}

#[derive(Debug, Clone, Copy)]
pub struct PtConfig {
    pub integrator_tol: f64,
    pub decay_budget: f64,
    /// Multiplies the ray truncation radius.
    pub radius_scale: f64,
}

impl Default for PtConfig {
    fn default() -> Self {
        PtConfig { integrator_tol: 1e-12, decay_budget: 25.0, radius_scale: 1.0 }
    }
}

struct Ray {
    theta: f64,
    rot: Complex64,
    /// Argument of the turning point on this side.
    turn: f64,
}

pub struct PtShooter {
    problem: PtProblemSpec,
    cfg: PtConfig,
    rays: [Ray; 2],
    /// Depth of the matching point below the origin at unit energy.
    depth: f64,
}

impl PtShooter {
    pub fn new(problem: PtProblemSpec, cfg: PtConfig) -> Result<Self, EigenError> {
        problem.check_direct()?;
        let (l, r) = problem.ray_angles();
        let ray = |theta: f64, turn: f64| Ray { theta, rot: Complex64::from_polar(1.0, 2.0 * theta), turn };
        let tw = PI * problem.k as f64 / (2.0 * problem.exponent);
        let depth = matching_depth(problem.exponent, problem.k)?;
        Ok(PtShooter { problem, cfg, rays: [ray(l, -PI / 2.0 - tw), ray(r, -PI / 2.0 + tw)], depth })
    }

    /// Matching point −i·depth·|E|^{1/(2M)}.
    pub fn matching_point(&self, e: Complex64) -> Complex64 {
        let m = self.problem.exponent;
        Complex64::new(0.0, -self.depth * e.norm().powf(0.5 / m))
    }

    fn potential(&self, x: Complex64) -> Complex64 {
        if x.norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let v = (Complex64::i() * x).ln() * (2.0 * self.problem.exponent);
        let sign = if self.problem.k % 2 == 0 { 1.0 } else { -1.0 };
        v.exp() * sign
    }

    fn radius(&self, e: Complex64) -> f64 {
        let m = self.problem.exponent;
        let xt = e.norm().max(1.0).powf(1.0 / (2.0 * m));
        let budget = ((m + 1.0) * self.cfg.decay_budget + xt.powf(m + 1.0)).powf(1.0 / (m + 1.0));
        (2.5 * xt).max(budget) * self.cfg.radius_scale
    }

    /// Solution decaying along one ray, at the origin: (φ, dφ/dx).
    /// Solution decaying along one ray, at the matching point: (φ, dφ/dx).
    /// The path runs in along the ray to the turning point, then straight
    /// to the matching point.
    fn leg(&self, ray: &Ray, e: Complex64, rho_max: f64, tol: f64) -> Result<(Complex64, Complex64), EigenError> {
        let m = self.problem.exponent;
        let dir = Complex64::from_polar(1.0, ray.theta);
        let xc = self.matching_point(e);
        let tp = Complex64::from_polar(e.norm().powf(0.5 / m), ray.turn);
        let q = |rho: f64| ray.rot * (self.potential(tp + dir * rho) - e);
        let h = 1e-6 * rho_max;
        let q0 = q(rho_max);
        let dq = (q(rho_max + h) - q(rho_max - h)) / (2.0 * h);
        let mut root = q0.sqrt();
        if root.re < 0.0 {
            root = -root;
        }
        let slope = -root - dq / (q0 * 4.0);
        let cfg = MagnusConfig { tol, ..Default::default() };
        let t = integrate(q, rho_max, 0.0, (Complex64::new(1.0, 0.0), slope), &cfg)?;
        let chord = tp - xc;
        let len = chord.norm();
        if len == 0.0 {
            return Ok((t.y, t.dy / dir));
        }
        let u = chord / len;
        let q2 = |s: f64| u * u * (self.potential(xc + u * s) - e);
        let t2 = integrate(q2, len, 0.0, (t.y, t.dy / dir * u), &cfg)?;
        Ok((t2.y, t2.dy / u))
    }

    fn wronskian(&self, e: Complex64, rho_max: f64, tol: f64) -> Result<Complex64, EigenError> {
        let (yl, dl) = self.leg(&self.rays[0], e, rho_max, tol)?;
        let (yr, dr) = self.leg(&self.rays[1], e, rho_max, tol)?;
        Ok(yl * dr - dl * yr)
    }

    /// Wronskian at the matching point of the two unit-normalized ray solutions.
    pub fn shoot(&self, e: Complex64) -> Result<Complex64, EigenError> {
        self.wronskian(e, self.radius(e), self.cfg.integrator_tol)
    }

    /// Semiclassical level estimate along the contour.
    pub fn wkb_energy(&self, k: f64) -> f64 {
        let m = self.problem.exponent;
        let r = 1.0 / (2.0 * m);
        let action = PI.sqrt() * gamma(1.0 + r).unwrap_or(f64::NAN) / (2.0 * gamma(1.5 + r).unwrap_or(f64::NAN));
        let s = (PI * self.problem.k as f64 / (2.0 * m)).sin();
        (PI * (k + 0.5) / (2.0 * action * s)).powf(2.0 * m / (m + 1.0))
    }

    fn wkb_spacing(&self, e: f64) -> f64 {
        let m = self.problem.exponent;
        let p = 2.0 * m / (m + 1.0);
        let n = (e / self.wkb_energy(0.0)).powf(1.0 / p) * 0.5;
        p * e / n.max(0.5)
    }
}

/// Depth t at which the anti-Stokes line through the turning point
/// e^{i(−π/2 + πK/(2M))} of the unit-energy problem meets the imaginary
/// axis: Im ∫ √(1 − V) dξ from the turning point to −it vanishes.
pub fn matching_depth(exponent: f64, k: u32) -> Result<f64, EigenError> {
    let m = exponent;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let v = |x: Complex64| (Complex64::i() * x).ln().scale(2.0 * m).exp() * sign;
    let tp = Complex64::from_polar(1.0, -PI / 2.0 + PI * k as f64 / (2.0 * m));
    let phase = |t: f64| -> f64 {
        // ξ = tp + (end − tp)u², which removes the square-root zero at u = 0
        let end = Complex64::new(0.0, -t);
        let d = end - tp;
        let n = 2000;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut prev: Option<Complex64> = None;
        for j in 0..n {
            let u = (j as f64 + 0.5) / n as f64;
            let mut r = (Complex64::new(1.0, 0.0) - v(tp + d * (u * u))).sqrt();
            if let Some(p) = prev {
                if (r - p).norm() > (r + p).norm() {
                    r = -r;
                }
            }
            prev = Some(r);
            acc += r * d * (2.0 * u);
        }
        (acc / n as f64).im
    };
    let guess = (PI * k as f64 / (2.0 * m)).cos();
    let grid: Vec<f64> = (1..=60).map(|j| guess * j as f64 / 30.0).collect();
    let mut best: Option<(f64, f64)> = None;
    let mut last = (grid[0], phase(grid[0]));
    for &t in &grid[1..] {
        let f = phase(t);
        if last.1 * f <= 0.0 {
            let cand = (last.0, t);
            let dist = |c: (f64, f64)| (0.5 * (c.0 + c.1) - guess).abs();
            if best.map_or(true, |b| dist(cand) < dist(b)) {
                best = Some(cand);
            }
        }
        last = (t, f);
    }
    let (a, b) = best.ok_or_else(|| EigenError::Unsupported(format!("no anti-Stokes crossing for M = {m}, K = {k}")))?;
    let (t, _) = brent(|t| Ok::<_, EigenError>(phase(t)), a, b, phase(a), phase(b), 1e-13, 200)?;
    Ok(t)
}

pub fn pt_shoot(problem: &PtProblemSpec, e: Complex64) -> Result<Complex64, EigenError> {
    PtShooter::new(*problem, PtConfig::default())?.shoot(e)
}

fn polish_real(sh: &PtShooter, k: usize, lo: f64, hi: f64, tol: f64) -> Result<Level, EigenError> {
    let rho = sh.radius(Complex64::new(hi, 0.0));
    let solve = |itol: f64| -> Result<(f64, f64), EigenError> {
        let f = |e: f64| sh.wronskian(Complex64::new(e, 0.0), rho, itol).map(|w| w.re);
        let (fa, fb) = (f(lo)?, f(hi)?);
        if fa * fb > 0.0 {
            return Err(EigenError::BracketingFailure { level: k, reason: format!("no sign change on [{lo}, {hi}]") });
        }
        brent(f, lo, hi, fa, fb, tol * hi.abs().max(1.0), 200)
    };
    let itol = sh.cfg.integrator_tol;
    let (e1, w1) = solve(itol)?;
    let (e2, _) = solve(10.0 * itol)?;
    let err = (e1 - e2).abs() + w1 + 8.0 * f64::EPSILON * e1.abs().max(1.0);
    Ok(Level { index: k, energy: Complex64::new(e1, 0.0), err })
}

/// Complex secant iteration from two starting points.
fn secant_complex(sh: &PtShooter, mut a: Complex64, mut b: Complex64, tol: f64) -> Result<Option<Complex64>, EigenError> {
    let mut fa = sh.shoot(a)?;
    let mut fb = sh.shoot(b)?;
    for _ in 0..60 {
        let d = fb - fa;
        if d.norm() == 0.0 {
            return Ok(None);
        }
        let c = b - fb * (b - a) / d;
        if !c.re.is_finite() || !c.im.is_finite() {
            return Ok(None);
        }
        a = b;
        fa = fb;
        b = c;
        fb = sh.shoot(b)?;
        if (b - a).norm() <= tol * b.norm().max(1.0) {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

/// First `count` levels: real roots of the Wronskian found by an adaptive
/// scan and Brent, with a complex secant search launched from modulus minima
/// that show no sign change.
pub fn pt_solve_spectrum_with(problem: &PtProblemSpec, count: usize, tol: f64, cfg: PtConfig) -> Result<Spectrum, EigenError> {
    let sh = PtShooter::new(*problem, cfg)?;
    let mut brackets: Vec<(f64, f64)> = Vec::new();
    let mut complex: Vec<Complex64> = Vec::new();
    let e_min = 0.05 * sh.wkb_energy(0.0);
    let mut e = e_min;
    let mut w = sh.shoot(Complex64::new(e, 0.0))?;
    let mut prev_abs = f64::INFINITY;
    let mut found = 0usize;
    let mut steps = 0usize;
    while found < count {
        steps += 1;
        if steps > 200 * (count + 10) {
            return Err(EigenError::BracketingFailure { level: found, reason: "scan budget exhausted".into() });
        }
        let h = 0.1 * sh.wkb_spacing(e.max(sh.wkb_energy(0.0)));
        let e2 = e + h;
        let w2 = sh.shoot(Complex64::new(e2, 0.0))?;
        if w.re * w2.re <= 0.0 {
            brackets.push((e, e2));
            found += 1;
        } else if w.norm() < prev_abs && w.norm() < w2.norm() {
            let guess = Complex64::new(e, 0.5 * h);
            if let Some(z) = secant_complex(&sh, guess, guess + Complex64::new(0.1 * h, 0.1 * h), tol)? {
                if z.im.abs() > 1e3 * tol * z.norm() && !complex.iter().any(|c| (c - z).norm() < 1e-6 * z.norm()) {
                    complex.push(z);
                    found += 2;
                }
            }
        }
        prev_abs = w.norm();
        e = e2;
        w = w2;
    }
    let mut levels: Vec<Level> = brackets
        .par_iter()
        .enumerate()
        .map(|(k, &(lo, hi))| polish_real(&sh, k, lo, hi, tol))
        .collect::<Result<_, _>>()?;
    for z in complex {
        for v in [z, z.conj()] {
            levels.push(Level { index: 0, energy: v, err: 1e3 * tol * v.norm() });
        }
    }
    levels.sort_by(|a, b| a.energy.re.partial_cmp(&b.energy.re).unwrap().then(a.energy.im.partial_cmp(&b.energy.im).unwrap()));
    levels.truncate(count);
    for (i, l) in levels.iter_mut().enumerate() {
        l.index = i;
    }
    Ok(Spectrum::new(SpectrumProblem::Pt(*problem), levels, SpectrumMethod::PtShooting)?)
}

pub fn pt_solve_spectrum(problem: &PtProblemSpec, count: usize, tol: f64) -> Result<Spectrum, EigenError> {
    pt_solve_spectrum_with(problem, count, tol, PtConfig::default())
}
