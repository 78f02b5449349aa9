//! Computed spectra shared by the radial and PT solvers.

use num_complex::Complex64;
use thiserror::Error;

use crate::closedform::ProblemSpec;
use crate::ptspectrum::PtProblemSpec;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectrumProblem {
    Radial(ProblemSpec),
    Pt(PtProblemSpec),
}

impl SpectrumProblem {
    pub fn exponent(&self) -> f64 {
        match self {
            SpectrumProblem::Radial(p) => p.exponent,
            SpectrumProblem::Pt(p) => p.exponent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMethod {
    Shooting,
    Collocation,
    PtShooting,
}

impl SpectrumMethod {
    pub fn label(self) -> &'static str {
        match self {
            SpectrumMethod::Shooting => "shooting",
            SpectrumMethod::Collocation => "collocation",
            SpectrumMethod::PtShooting => "pt-shooting",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub index: usize,
    pub energy: Complex64,
    pub err: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("level indices are not contiguous from 0 (found {found} at position {position})")]
    NonContiguous { position: usize, found: usize },
    #[error("radial level {index} is not real and strictly above its predecessor")]
    NotIncreasing { index: usize },
    #[error("level {index} has non-positive error estimate {err}")]
    BadError { index: usize, err: f64 },
}

/// An immutable list of levels with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    problem: SpectrumProblem,
    levels: Vec<Level>,
    method: SpectrumMethod,
}

impl Spectrum {
    pub fn new(problem: SpectrumProblem, levels: Vec<Level>, method: SpectrumMethod) -> Result<Self, SpectrumError> {
        for (i, l) in levels.iter().enumerate() {
            if l.index != i {
                return Err(SpectrumError::NonContiguous { position: i, found: l.index });
            }
            if !(l.err > 0.0) {
                return Err(SpectrumError::BadError { index: i, err: l.err });
            }
        }
        if let SpectrumProblem::Radial(_) = problem {
            for (i, l) in levels.iter().enumerate() {
                let ok = l.energy.im == 0.0 && (i == 0 || l.energy.re > levels[i - 1].energy.re);
                if !ok {
                    return Err(SpectrumError::NotIncreasing { index: i });
                }
            }
        }
        Ok(Spectrum { problem, levels, method })
    }

    pub fn problem(&self) -> &SpectrumProblem {
        &self.problem
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn method(&self) -> SpectrumMethod {
        self.method
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// The first `count` levels.
    pub fn truncated(&self, count: usize) -> Spectrum {
        Spectrum {
            problem: self.problem,
            levels: self.levels[..count.min(self.levels.len())].to_vec(),
            method: self.method,
        }
    }

    pub fn energies(&self) -> Vec<Complex64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    /// Real parts, for spectra known to be real.
    pub fn real_energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy.re).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::Branch;

    fn radial() -> SpectrumProblem {
        SpectrumProblem::Radial(ProblemSpec::new(2.0, 0.0, 0.5, Branch::Regular).unwrap())
    }

    fn lvl(index: usize, e: f64) -> Level {
        Level { index, energy: Complex64::new(e, 0.0), err: 1e-12 }
    }

    #[test]
    fn rejects_gaps_and_disorder() {
        assert!(Spectrum::new(radial(), vec![lvl(0, 1.0), lvl(2, 2.0)], SpectrumMethod::Shooting).is_err());
        assert!(Spectrum::new(radial(), vec![lvl(0, 2.0), lvl(1, 1.0)], SpectrumMethod::Shooting).is_err());
        let mut l = lvl(0, 1.0);
        l.err = 0.0;
        assert!(Spectrum::new(radial(), vec![l], SpectrumMethod::Shooting).is_err());
        assert!(Spectrum::new(radial(), vec![lvl(0, 1.0), lvl(1, 3.0)], SpectrumMethod::Shooting).is_ok());
    }
}
