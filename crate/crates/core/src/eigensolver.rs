//! Real spectra of the radial problem by shooting, plus a Laguerre-basis
//! matrix oracle.
//!
//! Shooting integrates a Frobenius start outward to a matching point near the
//! outermost turning point and a decaying WKB start inward from far out. The
//! Prüfer phases of the two legs give an exact count of eigenvalues below E,
//! which drives bracketing; each bracket is then polished with Brent on the
//! normalized Wronskian.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::closedform::ProblemSpec;
use crate::magnus::{integrate, IntegrationError, MagnusConfig};
use crate::roots::brent;
use crate::specfun::{gamma, log_gamma};
use crate::spectrum::{Level, Spectrum, SpectrumError, SpectrumMethod, SpectrumProblem};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EigenError {
    #[error("integration failed: {0}")]
    IntegrationFailure(#[from] IntegrationError),
    #[error("stiff or resonant start: {0}")]
    StiffnessError(String),
    #[error("could not bracket level {level}: {reason}")]
    BracketingFailure { level: usize, reason: String },
    #[error("level {level} did not converge: {reason}")]
    NoConvergence { level: usize, reason: String },
    #[error("discretization failed: {0}")]
    DiscretizationError(String),
    #[error("problem not solvable directly: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

#[derive(Debug, Clone, Copy)]
pub struct ShootingConfig {
    /// Local tolerance of the ODE integrator.
    pub integrator_tol: f64,
    /// Multiplies the default Frobenius start point.
    pub x0_scale: f64,
    /// x_max is at least this multiple of the turning point.
    pub xmax_factor: f64,
    /// Minimum ∫√(V−E) between turning point and x_max.
    pub decay_budget: f64,
    /// Multiplies the matching point.
    pub matching_scale: f64,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        ShootingConfig { integrator_tol: 1e-12, x0_scale: 1.0, xmax_factor: 2.5, decay_budget: 25.0, matching_scale: 1.0 }
    }
}

/// Exponents 2a + (M+1)b + (2M+2)c of the Frobenius series.
#[derive(Debug, Clone)]
struct Lattice {
    exps: Vec<f64>,
    /// Indices of f−2, f−(M+1), f−(2M+2).
    back: Vec<[Option<usize>; 3]>,
    tail_from: f64,
}

impl Lattice {
    fn new(m: f64, with_coupling: bool) -> Self {
        let big = 2.0 * m + 2.0;
        let top = (4.0 * big).max(48.0);
        let mut exps = Vec::new();
        let mut c = 0.0;
        while c * big <= top {
            let mut b = 0.0;
            while c * big + b * (m + 1.0) <= top {
                let mut a = 0.0;
                while c * big + b * (m + 1.0) + 2.0 * a <= top {
                    exps.push(c * big + b * (m + 1.0) + 2.0 * a);
                    a += 1.0;
                }
                if !with_coupling {
                    break;
                }
                b += 1.0;
            }
            c += 1.0;
        }
        exps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        exps.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        let find = |t: f64| -> Option<usize> {
            let i = exps.partition_point(|&e| e < t - 1e-9);
            (i < exps.len() && (exps[i] - t).abs() < 1e-9).then_some(i)
        };
        let back = exps
            .iter()
            .map(|&f| [find(f - 2.0), if with_coupling { find(f - m - 1.0) } else { None }, find(f - big)])
            .collect();
        Lattice { back, tail_from: top - big, exps }
    }
}

/// Result of one shot at a fixed energy.
#[derive(Debug, Clone, Copy)]
pub struct Shot {
    /// Wronskian of the unit-normalized left and right solutions at x_match.
    pub mismatch: f64,
    /// Number of eigenvalues ≤ E.
    pub count: usize,
    /// Sign changes of the left and right solutions.
    pub nodes: usize,
    pub x_match: f64,
    pub x_max: f64,
}

/// Shooting machinery for one problem.
#[derive(Debug, Clone)]
pub struct Shooter {
    problem: ProblemSpec,
    cfg: ShootingConfig,
    lattice: Lattice,
    mu: f64,
    centrifugal: f64,
}

impl Shooter {
    pub fn new(problem: ProblemSpec, cfg: ShootingConfig) -> Self {
        let lattice = Lattice::new(problem.exponent, problem.coupling != 0.0);
        let mu = problem.effective_lambda();
        Shooter { problem, cfg, lattice, mu, centrifugal: mu * mu - 0.25 }
    }

    pub fn problem(&self) -> &ProblemSpec {
        &self.problem
    }

    pub fn potential(&self, x: f64) -> f64 {
        let m = self.problem.exponent;
        let l = x.ln();
        let mut v = (2.0 * m * l).exp() + self.centrifugal / (x * x);
        if self.problem.coupling != 0.0 {
            v += self.problem.coupling * ((m - 1.0) * l).exp();
        }
        v
    }

    fn potential_slope(&self, x: f64) -> f64 {
        let m = self.problem.exponent;
        let l = x.ln();
        let mut d = 2.0 * m * ((2.0 * m - 1.0) * l).exp() - 2.0 * self.centrifugal / (x * x * x);
        if self.problem.coupling != 0.0 {
            d += self.problem.coupling * (m - 1.0) * ((m - 2.0) * l).exp();
        }
        d
    }

    /// ψ/x^ρ and ψ'/x^ρ at x0 from the Frobenius series, with the relative
    /// size of the last terms kept.
    fn series(&self, e: f64, x0: f64) -> Result<(f64, f64, f64), EigenError> {
        let lat = &self.lattice;
        let rho = 0.5 + self.mu;
        let mut c = vec![0.0; lat.exps.len()];
        c[0] = 1.0;
        let (mut y, mut dy, mut tail) = (1.0, rho / x0, 0.0);
        for i in 1..lat.exps.len() {
            let f = lat.exps[i];
            let [i2, im, ib] = lat.back[i];
            let mut num = 0.0;
            if let Some(j) = i2 {
                num -= e * c[j];
            }
            if let Some(j) = im {
                num += self.problem.coupling * c[j];
            }
            if let Some(j) = ib {
                num += c[j];
            }
            let den = f * (f + 2.0 * self.mu);
            if den.abs() < 1e-10 {
                return Err(EigenError::StiffnessError(format!("resonant Frobenius exponent {f}")));
            }
            c[i] = num / den;
            let t = c[i] * x0.powf(f);
            y += t;
            dy += t * (f + rho) / x0;
            if f > lat.tail_from {
                tail += t.abs();
            }
        }
        Ok((y, dy, tail / y.abs().max(1e-300)))
    }

    fn start(&self, e: f64) -> Result<(f64, f64, f64), EigenError> {
        let mut x0 = 0.5f64.min(0.3 / e.abs().sqrt()) * self.cfg.x0_scale;
        for _ in 0..60 {
            let (y, dy, tail) = self.series(e, x0)?;
            if tail < 0.1 * self.cfg.integrator_tol {
                return Ok((x0, y, dy));
            }
            x0 *= 0.5;
        }
        Err(EigenError::StiffnessError(format!("Frobenius start did not converge at E = {e}")))
    }

    fn x_max(&self, e: f64) -> f64 {
        let m = self.problem.exponent;
        let xt = e.abs().max(1.0).powf(1.0 / (2.0 * m));
        let budget = ((m + 1.0) * self.cfg.decay_budget + xt.powf(m + 1.0)).powf(1.0 / (m + 1.0));
        let mut xm = (self.cfg.xmax_factor * xt).max(budget);
        while self.potential(xm) - e <= 1.0 {
            xm *= 1.5;
        }
        xm
    }

    /// Outermost classical turning point, or the potential minimum when E is
    /// below it.
    fn matching_point(&self, e: f64, x0: f64, xmax: f64) -> f64 {
        let mut hi = xmax;
        let mut found = None;
        while hi > x0 {
            let lo = hi * 0.97;
            if self.potential(lo) - e <= 0.0 {
                let (mut a, mut b) = (lo, hi);
                for _ in 0..60 {
                    let mid = 0.5 * (a + b);
                    if self.potential(mid) - e <= 0.0 {
                        a = mid;
                    } else {
                        b = mid;
                    }
                }
                found = Some(0.5 * (a + b));
                break;
            }
            hi = lo;
        }
        let xm = found.unwrap_or_else(|| {
            let mut best = (xmax, f64::INFINITY);
            let mut x = xmax;
            while x > x0 {
                let v = self.potential(x);
                if v < best.1 {
                    best = (x, v);
                }
                x *= 0.97;
            }
            best.0
        });
        (xm * self.cfg.matching_scale).clamp(4.0 * x0, xmax / 1.2)
    }

    /// Shoots at E with matching point and outer end chosen for E.
    pub fn shoot(&self, e: f64) -> Result<Shot, EigenError> {
        let xmax = self.x_max(e);
        let (x0, _, _) = self.start(e)?;
        let xm = self.matching_point(e, x0, xmax);
        self.shoot_at(e, xm, xmax, self.cfg.integrator_tol)
    }

    /// Shoots at E with the geometry held fixed.
    pub fn shoot_at(&self, e: f64, x_match: f64, x_max: f64, tol: f64) -> Result<Shot, EigenError> {
        let (x0, y0, dy0) = self.start(e)?;
        if x0 >= x_match {
            return Err(EigenError::StiffnessError(format!("start {x0} beyond matching point {x_match}")));
        }
        let mcfg = MagnusConfig { tol, ..Default::default() };
        let q = |x: f64| self.potential(x) - e;
        let left = integrate(q, x0, x_match, (y0, dy0), &mcfg)?;
        let qe = q(x_max);
        if qe <= 0.0 {
            return Err(EigenError::StiffnessError(format!("x_max = {x_max} is inside the allowed region")));
        }
        let slope = -qe.sqrt() - self.potential_slope(x_max) / (4.0 * qe);
        let right = integrate(q, x_max, x_match, (1.0, slope), &mcfg)?;
        let mismatch = left.y * right.dy - left.dy * right.y;
        let left_nodes = left.sign_changes + usize::from(y0 < 0.0);
        let nodes = left_nodes + right.sign_changes;
        let phase_l = left.y.atan2(left.dy).rem_euclid(PI);
        let phase_r = right.y.atan2(right.dy).rem_euclid(PI);
        let count = nodes + usize::from(phase_l >= phase_r);
        Ok(Shot { mismatch, count, nodes, x_match, x_max })
    }

    /// Geometry used to polish a level bracketed by [lo, hi].
    fn geometry(&self, hi: f64) -> Result<(f64, f64), EigenError> {
        let xmax = self.x_max(hi);
        let (x0, _, _) = self.start(hi)?;
        Ok((self.matching_point(hi, x0, xmax), xmax))
    }

    fn count(&self, e: f64) -> Result<usize, EigenError> {
        Ok(self.shoot(e)?.count)
    }
}

/// Bohr–Sommerfeld level estimate with a Maslov-type offset.
#[derive(Debug, Clone, Copy)]
pub struct WkbModel {
    pub exponent: f64,
    pub coupling: f64,
    pub offset: f64,
}

impl WkbModel {
    pub fn new(problem: &ProblemSpec) -> Self {
        WkbModel {
            exponent: problem.exponent,
            coupling: problem.coupling,
            offset: 0.5 + 0.5 * problem.effective_lambda(),
        }
    }

    /// ∫₀¹ √(1 − u^{2M}) du
    fn action_constant(&self) -> f64 {
        let r = 1.0 / (2.0 * self.exponent);
        PI.sqrt() * gamma(1.0 + r).unwrap_or(f64::NAN) / (2.0 * gamma(1.5 + r).unwrap_or(f64::NAN))
    }

    fn shift(&self) -> f64 {
        self.coupling / (4.0 * self.exponent)
    }

    pub fn energy(&self, k: f64) -> f64 {
        let n = (k + self.offset + self.shift()).max(0.05);
        let m = self.exponent;
        (PI * n / self.action_constant()).powf(2.0 * m / (m + 1.0))
    }

    /// Continuous level index at energy E.
    pub fn index(&self, e: f64) -> f64 {
        let m = self.exponent;
        self.action_constant() * e.max(0.0).powf((m + 1.0) / (2.0 * m)) / PI - self.offset - self.shift()
    }

    /// Refits the offset to solved levels.
    pub fn refit(&mut self, levels: &[(usize, f64)]) {
        if levels.is_empty() {
            return;
        }
        let old = self.offset;
        let sum: f64 = levels.iter().map(|&(k, e)| self.index(e) + old - k as f64).sum();
        self.offset = sum / levels.len() as f64;
    }
}

pub fn wkb_estimate(problem: &ProblemSpec, k: usize) -> f64 {
    WkbModel::new(problem).energy(k as f64)
}

pub fn shoot(problem: &ProblemSpec, e: f64) -> Result<f64, EigenError> {
    Ok(Shooter::new(*problem, ShootingConfig::default()).shoot(e)?.mismatch)
}

fn isolate(
    sh: &Shooter,
    model: &WkbModel,
    lo: (f64, usize),
    hi: (f64, usize),
    want: usize,
    out: &mut Vec<Option<(f64, f64)>>,
) -> Result<(), EigenError> {
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        if a.1 >= want || b.1 <= a.1 {
            continue;
        }
        if b.1 == a.1 + 1 {
            out[a.1] = Some((a.0, b.0));
            continue;
        }
        if (b.0 - a.0).abs() <= 1e-13 * b.0.abs().max(1.0) {
            return Err(EigenError::BracketingFailure { level: a.1, reason: format!("levels {}..{} unresolved near {}", a.1, b.1, a.0) });
        }
        let target = 0.5 * (a.1 + b.1) as f64;
        let guess = model.energy(target - 0.5);
        let w = b.0 - a.0;
        let mid = if guess.is_finite() { guess.clamp(a.0 + 0.1 * w, b.0 - 0.1 * w) } else { a.0 + 0.5 * w };
        let c = sh.count(mid)?;
        stack.push(((mid, c), b));
        stack.push((a, (mid, c)));
    }
    Ok(())
}

/// Brackets [lo, hi] with exactly `k` eigenvalues ≤ lo and k+1 ≤ hi for each k < count.
pub fn bracket_levels(sh: &Shooter, count: usize) -> Result<Vec<(f64, f64)>, EigenError> {
    let mut model = WkbModel::new(sh.problem());
    let mut lo = 0.25 * model.energy(0.0);
    let mut clo = sh.count(lo)?;
    let mut tries = 0;
    while clo > 0 {
        lo -= 2.0 * (lo.abs() + 1.0);
        clo = sh.count(lo)?;
        tries += 1;
        if tries > 60 {
            return Err(EigenError::BracketingFailure { level: 0, reason: "no lower bound".into() });
        }
    }
    let mut out = vec![None; count];
    let first = count.min(5);
    let mut hi = model.energy(first as f64).max(lo + 1.0);
    let mut chi = sh.count(hi)?;
    tries = 0;
    while chi < first {
        hi += 0.5 * (hi - lo);
        chi = sh.count(hi)?;
        tries += 1;
        if tries > 60 {
            return Err(EigenError::BracketingFailure { level: chi, reason: "no upper bound".into() });
        }
    }
    isolate(sh, &model, (lo, clo), (hi, chi), first, &mut out)?;
    let solved: Vec<(usize, f64)> = out[..first].iter().enumerate().map(|(k, b)| (k, b.map_or(f64::NAN, |b| 0.5 * (b.0 + b.1)))).collect();
    if solved.iter().all(|s| s.1 > 0.0) {
        model.refit(&solved);
    }
    if count > first {
        let lo2 = out[first - 1].map(|b| b.1).unwrap_or(hi);
        let clo2 = first;
        let mut hi2 = model.energy(count as f64 - 0.5).max(lo2 * 1.01 + 1e-3);
        let mut chi2 = sh.count(hi2)?;
        tries = 0;
        while chi2 < count {
            hi2 += 0.25 * (hi2 - lo2);
            chi2 = sh.count(hi2)?;
            tries += 1;
            if tries > 60 {
                return Err(EigenError::BracketingFailure { level: chi2, reason: "no upper bound".into() });
            }
        }
        isolate(sh, &model, (lo2, clo2), (hi2, chi2), count, &mut out)?;
    }
    out.into_iter()
        .enumerate()
        .map(|(k, b)| b.ok_or(EigenError::BracketingFailure { level: k, reason: "missed by bisection".into() }))
        .collect()
}

fn polish(sh: &Shooter, k: usize, lo: f64, hi: f64, tol: f64) -> Result<Level, EigenError> {
    let (xm, xmax) = sh.geometry(hi)?;
    let solve = |itol: f64| -> Result<(f64, f64), EigenError> {
        let f = |e: f64| sh.shoot_at(e, xm, xmax, itol).map(|s| s.mismatch);
        let fa = f(lo)?;
        let fb = f(hi)?;
        if fa * fb > 0.0 {
            return Err(EigenError::BracketingFailure { level: k, reason: format!("no sign change on [{lo}, {hi}]") });
        }
        let xtol = tol * hi.abs().max(1.0);
        brent(f, lo, hi, fa, fb, xtol, 200)
    };
    let itol = sh.cfg.integrator_tol;
    let (e1, w1) = solve(itol)?;
    let (e2, _) = solve(10.0 * itol)?;
    let shot = sh.shoot_at(e1, xm, xmax, itol)?;
    if shot.nodes != k {
        return Err(EigenError::NoConvergence { level: k, reason: format!("eigenfunction has {} nodes", shot.nodes) });
    }
    let err = (e1 - e2).abs() + w1 + 8.0 * f64::EPSILON * e1.abs().max(1.0);
    Ok(Level { index: k, energy: Complex64::new(e1, 0.0), err })
}

pub fn solve_spectrum_with(problem: &ProblemSpec, count: usize, tol: f64, cfg: ShootingConfig) -> Result<Spectrum, EigenError> {
    let sh = Shooter::new(*problem, cfg);
    let brackets = bracket_levels(&sh, count)?;
    let levels: Result<Vec<Level>, EigenError> =
        brackets.par_iter().enumerate().map(|(k, &(lo, hi))| polish(&sh, k, lo, hi, tol)).collect();
    Ok(Spectrum::new(SpectrumProblem::Radial(*problem), levels?, SpectrumMethod::Shooting)?)
}

/// First `count` levels by shooting, each polished to relative width `tol`.
pub fn solve_spectrum(problem: &ProblemSpec, count: usize, tol: f64) -> Result<Spectrum, EigenError> {
    solve_spectrum_with(problem, count, tol, ShootingConfig::default())
}

/// Matrix of t^γ between orthonormal generalized Laguerre functions of order μ.
fn laguerre_power_matrix(n: usize, mu: f64, gamma_pow: f64) -> Result<DMatrix<f64>, EigenError> {
    let lg = |x: f64| log_gamma(x).map_err(|e| EigenError::DiscretizationError(e.to_string()));
    let mut ratio = vec![1.0; n];
    for j in 1..n {
        ratio[j] = ratio[j - 1] * (j as f64 - 1.0 - gamma_pow) / j as f64;
    }
    let mut row_norm = vec![0.0; n];
    let mut col_norm = vec![0.0; n];
    for i in 0..n {
        let fi = i as f64;
        row_norm[i] = lg(fi + 1.0)? - lg(fi + mu + 1.0)?;
        col_norm[i] = lg(fi + mu + gamma_pow + 1.0)? - lg(fi + 1.0)?;
    }
    let c = DMatrix::from_fn(n, n, |i, k| {
        if k > i || ratio[i - k] == 0.0 {
            0.0
        } else {
            ratio[i - k] * (0.5 * (row_norm[i] + col_norm[k])).exp()
        }
    });
    Ok(&c * c.transpose())
}

fn collocation_energies(problem: &ProblemSpec, n: usize, omega: f64) -> Result<Vec<f64>, EigenError> {
    let m = problem.exponent;
    let mu = problem.effective_lambda();
    let mut h = laguerre_power_matrix(n, mu, m)? * omega.powf(-m);
    h -= laguerre_power_matrix(n, mu, 1.0)? * omega;
    if problem.coupling != 0.0 {
        let g = 0.5 * (m - 1.0);
        h += laguerre_power_matrix(n, mu, g)? * (problem.coupling * omega.powf(-g));
    }
    for i in 0..n {
        h[(i, i)] += omega * (4.0 * i as f64 + 2.0 * mu + 2.0);
    }
    let eig = h.symmetric_eigen();
    let mut e: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    e.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(e)
}

/// Default basis frequency: the oscillator length matched to the extent of
/// the highest basis function's classical region.
pub fn default_collocation_frequency(problem: &ProblemSpec, basis_size: usize) -> f64 {
    let m = problem.exponent;
    (4.0 * basis_size as f64).powf((m - 1.0) / (m + 1.0)).max(1.0) * 0.5
}

pub fn collocation_spectrum_with(problem: &ProblemSpec, count: usize, basis_size: usize, omega: f64) -> Result<Spectrum, EigenError> {
    let mu = problem.effective_lambda();
    if mu <= -1.0 {
        return Err(EigenError::DiscretizationError(format!("basis requires an order above −1, got {mu}")));
    }
    if count == 0 || basis_size < 4 * count {
        return Err(EigenError::DiscretizationError(format!("basis size {basis_size} below 4 × {count}")));
    }
    let fine = collocation_energies(problem, basis_size, omega)?;
    let coarse = collocation_energies(problem, (3 * basis_size) / 4, omega)?;
    let levels = (0..count)
        .map(|k| Level {
            index: k,
            energy: Complex64::new(fine[k], 0.0),
            err: (fine[k] - coarse[k]).abs() + 16.0 * f64::EPSILON * fine[basis_size - 1].abs(),
        })
        .collect();
    Ok(Spectrum::new(SpectrumProblem::Radial(*problem), levels, SpectrumMethod::Collocation)?)
}

/// Eigenvalues of the operator projected on `basis_size` Laguerre functions.
pub fn collocation_spectrum(problem: &ProblemSpec, count: usize, basis_size: usize) -> Result<Spectrum, EigenError> {
    collocation_spectrum_with(problem, count, basis_size, default_collocation_frequency(problem, basis_size))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::Branch;

    fn quartic() -> ProblemSpec {
        ProblemSpec::new(2.0, 0.0, 0.5, Branch::Regular).unwrap()
    }

    #[test]
    fn lattice_without_coupling_is_even_for_quartic() {
        let l = Lattice::new(2.0, false);
        assert!(l.exps.iter().all(|f| (f / 2.0 - (f / 2.0).round()).abs() < 1e-12));
        assert_eq!(l.exps[1], 2.0);
    }

    #[test]
    fn harmonic_limit_of_the_series() {
        // M = 1 is outside the problem domain, but the lattice/recursion
        // reproduce the oscillator ground state e^{−x²/2} at E = 3 (λ = ½).
        let p = ProblemSpec { exponent: 1.0, coupling: 0.0, lambda: 0.5, branch: Branch::Regular };
        let sh = Shooter::new(p, ShootingConfig::default());
        let x = 0.3;
        let (y, dy, _) = sh.series(3.0, x).unwrap();
        let exact = (-x * x / 2.0f64).exp();
        assert!((y - exact).abs() < 1e-14);
        assert!((dy - (1.0 / x - x) * exact).abs() < 1e-13);
    }

    #[test]
    fn quartic_ground_state_count_and_sign() {
        let sh = Shooter::new(quartic(), ShootingConfig::default());
        assert_eq!(sh.count(1.0).unwrap(), 0);
        assert_eq!(sh.count(4.0).unwrap(), 1);
        let w1 = sh.shoot_at(3.0, 1.3, 6.0, 1e-12).unwrap().mismatch;
        let w2 = sh.shoot_at(4.0, 1.3, 6.0, 1e-12).unwrap().mismatch;
        assert!(w1 * w2 < 0.0);
    }

    #[test]
    fn wkb_ratio_tends_to_power() {
        let p = quartic();
        let r = wkb_estimate(&p, 2_000_000) / wkb_estimate(&p, 1_000_000);
        assert!((r - 2f64.powf(4.0 / 3.0)).abs() < 1e-5);
    }

    #[test]
    fn collocation_matrix_of_unit_power_is_tridiagonal() {
        let t = laguerre_power_matrix(6, 0.5, 1.0).unwrap();
        for i in 0..6 {
            assert!((t[(i, i)] - (2.0 * i as f64 + 1.5)).abs() < 1e-12);
            for j in 0..6 {
                if (i as i64 - j as i64).abs() > 1 {
                    assert!(t[(i, j)].abs() < 1e-12);
                }
            }
        }
    }
}
