use std::fmt::Display;
use std::path::Path;

use serde_json::{json, Map, Value};
use spectral_zeta::closedform::{
    z1_general_alpha, z1_zero_alpha, z2_zero_alpha, Branch, ClosedFormError, ProblemSpec, ZetaValue,
};
use spectral_zeta::eigensolver::{collocation_spectrum, solve_spectrum, EigenError};
use spectral_zeta::ptspectrum::{pt_solve_spectrum, PtProblemSpec};
use spectral_zeta::spectrum::{Spectrum, SpectrumProblem};
use spectral_zeta::sumrules::{fused_input_coupling, fused_sumrule_eval, rearranged_sumrules, SumRuleError};
use spectral_zeta::zeta_numeric::zeta_with_tail;

use crate::args::{BranchArg, EigArgs, EigMethod, Format, ProblemArgs, ZetaArgs, ZetaMethodArg};
use crate::output::{emit, num, to_csv, to_json, SCHEMA_VERSION};

#[derive(Debug)]
pub enum Failure {
    Config(String),
    Numerical(String),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Numerical(_) | Failure::Io(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Config(_) => "configuration",
            Failure::Numerical(_) => "numerical",
            Failure::Io(_) => "io",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Config(m) | Failure::Numerical(m) | Failure::Io(m) => m,
        }
    }

    pub fn config(e: impl Display) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<ClosedFormError> for Failure {
    fn from(e: ClosedFormError) -> Self {
        match e {
            ClosedFormError::Domain { .. } | ClosedFormError::ExcludedLambda { .. } | ClosedFormError::OffLocus(_) => {
                Failure::Config(e.to_string())
            }
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

impl From<EigenError> for Failure {
    fn from(e: EigenError) -> Self {
        match e {
            EigenError::Unsupported(_) => Failure::Config(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

impl From<SumRuleError> for Failure {
    fn from(e: SumRuleError) -> Self {
        match e {
            SumRuleError::ClosedForm(c) => c.into(),
            SumRuleError::UnsupportedOrder(_) | SumRuleError::UnsupportedParity { .. } | SumRuleError::MissingOrder { .. } => {
                Failure::Config(e.to_string())
            }
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    VerificationFailed,
}

pub fn branch(b: BranchArg) -> Branch {
    match b {
        BranchArg::Minus => Branch::Regular,
        BranchArg::Plus => Branch::Irregular,
    }
}

fn radial_problem(p: &ProblemArgs) -> Result<ProblemSpec, Failure> {
    Ok(ProblemSpec::new(p.exponent, p.alpha, p.lambda, branch(p.branch))?)
}

pub fn problem_json(problem: &SpectrumProblem) -> Value {
    match problem {
        SpectrumProblem::Radial(p) => json!({
            "kind": "radial",
            "M": p.exponent,
            "alpha": p.coupling,
            "lambda": p.lambda,
            "branch": p.branch.label(),
        }),
        SpectrumProblem::Pt(p) => json!({
            "kind": "pt",
            "M": p.exponent,
            "K": p.k,
            "alpha": p.coupling,
            "lambda": p.lambda,
        }),
    }
}

pub fn zeta_json(z: &ZetaValue) -> Value {
    json!({"order": z.order, "value": z.value, "err": z.err, "method": z.method.label()})
}

/// Radial spectrum with the default shooting tolerance used by the zeta routes.
pub fn radial_spectrum(p: &ProblemSpec, count: usize) -> Result<Spectrum, Failure> {
    Ok(solve_spectrum(p, count, 1e-13)?)
}

/// Eigenvalue-sum Z(n) for each order, from `levels` levels plus the tail model.
pub fn eig_sum(s: &Spectrum, orders: &[u32]) -> Result<Vec<ZetaValue>, Failure> {
    orders
        .iter()
        .map(|&n| zeta_with_tail(s, n).map_err(|e| Failure::Numerical(e.to_string())))
        .collect()
}

pub fn cmd_eig(a: &EigArgs) -> Result<Status, Failure> {
    let (problem, levels, method) = if let Some(k) = a.problem.fusion {
        if a.method != EigMethod::Shooting {
            return Err(Failure::Config("PT spectra are only available by shooting".into()));
        }
        let p = PtProblemSpec::new(a.problem.exponent, k, a.problem.alpha, a.problem.lambda)?;
        p.check_direct()?;
        if a.count == 0 {
            (SpectrumProblem::Pt(p), Vec::new(), "pt-shooting")
        } else {
            let s = pt_solve_spectrum(&p, a.count, a.tol)?;
            (SpectrumProblem::Pt(p), s.levels().to_vec(), s.method().label())
        }
    } else {
        let p = radial_problem(&a.problem)?;
        let label = match a.method {
            EigMethod::Shooting => "shooting",
            EigMethod::Collocation => "collocation",
        };
        if a.count == 0 {
            (SpectrumProblem::Radial(p), Vec::new(), label)
        } else {
            let s = match a.method {
                EigMethod::Shooting => solve_spectrum(&p, a.count, a.tol)?,
                EigMethod::Collocation => collocation_spectrum(&p, a.count, a.basis.unwrap_or((4 * a.count).max(200)))?,
            };
            (SpectrumProblem::Radial(p), s.levels().to_vec(), label)
        }
    };
    let text = match a.output.format {
        Format::Json => {
            let lv: Vec<Value> = levels
                .iter()
                .map(|l| json!({"k": l.index, "re": l.energy.re, "im": l.energy.im, "err": l.err}))
                .collect();
            to_json(&json!({
                "schema_version": SCHEMA_VERSION,
                "command": "eig",
                "problem": problem_json(&problem),
                "method": method,
                "levels": lv,
            }))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = levels
                .iter()
                .map(|l| vec![l.index.to_string(), num(l.energy.re), num(l.energy.im), num(l.err)])
                .collect();
            to_csv(&["k", "re", "im", "err"], &rows)?
        }
    };
    emit(a.output.output.as_deref(), &text)?;
    if let Some(path) = &a.plot {
        let rows: Vec<Vec<String>> = levels
            .iter()
            .filter(|l| l.energy.re > 0.0)
            .map(|l| vec![num(((l.index + 1) as f64).ln()), num(l.energy.re.ln())])
            .collect();
        emit(Some(path), &to_csv(&["x", "y"], &rows)?)?;
    }
    Ok(Status::Ok)
}

fn closed_radial(p: &ProblemSpec, n: u32) -> Result<ZetaValue, Failure> {
    let (s, mu) = (p.sigma(), p.effective_lambda());
    match n {
        1 if p.coupling == 0.0 => Ok(z1_zero_alpha(s, mu)?),
        1 => Ok(z1_general_alpha(s, mu, p.coupling)?),
        2 if p.coupling == 0.0 => Ok(z2_zero_alpha(s, mu)?),
        _ => Err(Failure::Config(format!(
            "no closed form for order {n} at alpha = {}; use --method eig-sum",
            p.coupling
        ))),
    }
}

/// Closed-form Z∓(1..order) at coupling `alpha`.
pub fn closed_pair(sigma: f64, lambda: f64, alpha: f64, order: u32) -> Result<(Vec<ZetaValue>, Vec<ZetaValue>), Failure> {
    let one = |l: f64| -> Result<Vec<ZetaValue>, Failure> {
        let mut v = Vec::new();
        for n in 1..=order {
            v.push(match (n, alpha == 0.0) {
                (1, true) => z1_zero_alpha(sigma, l)?,
                (1, false) => z1_general_alpha(sigma, l, alpha)?,
                (2, true) => z2_zero_alpha(sigma, l)?,
                _ => return Err(Failure::Config(format!("no closed form for order {n} at alpha = {alpha}"))),
            });
        }
        Ok(v)
    };
    Ok((one(lambda)?, one(-lambda)?))
}

pub fn cmd_zeta(a: &ZetaArgs) -> Result<Status, Failure> {
    if a.n.is_empty() || a.n.contains(&0) {
        return Err(Failure::Config("orders must be positive".into()));
    }
    let max_order = *a.n.iter().max().unwrap();
    let (problem, values) = if let Some(k) = a.problem.fusion {
        let p = PtProblemSpec::new(a.problem.exponent, k, a.problem.alpha, a.problem.lambda)?;
        let values = match a.method {
            ZetaMethodArg::EigSum => {
                p.check_direct()?;
                let s = pt_solve_spectrum(&p, a.levels, a.tol)?;
                eig_sum(&s, &a.n)?
            }
            ZetaMethodArg::ClosedForm | ZetaMethodArg::SumRule => {
                let sigma = 1.0 / (p.exponent + 1.0);
                let coupling = fused_input_coupling(k, p.coupling)?;
                let (zm, zp) = closed_pair(sigma, p.lambda, coupling, max_order)?;
                let mut v = Vec::new();
                for &n in &a.n {
                    v.push(fused_sumrule_eval(k, n as usize, &zm, &zp, sigma, p.lambda, p.coupling)?);
                }
                v
            }
        };
        (SpectrumProblem::Pt(p), values)
    } else {
        let p = radial_problem(&a.problem)?;
        let values = match a.method {
            ZetaMethodArg::ClosedForm => a.n.iter().map(|&n| closed_radial(&p, n)).collect::<Result<Vec<_>, _>>()?,
            ZetaMethodArg::EigSum => {
                let s = solve_spectrum(&p, a.levels, a.tol)?;
                eig_sum(&s, &a.n)?
            }
            ZetaMethodArg::SumRule => {
                if p.branch != Branch::Irregular || p.coupling != 0.0 || max_order > 2 {
                    return Err(Failure::Config(
                        "the sum-rule route gives Z+(1), Z+(2) from Z-(1), Z-(2) at alpha = 0; use --branch plus".into(),
                    ));
                }
                let (zm, _) = closed_pair(p.sigma(), p.lambda, 0.0, max_order)?;
                let zmv: Vec<f64> = zm.iter().map(|z| z.value).collect();
                let mut v = Vec::new();
                for &n in &a.n {
                    let value = rearranged_sumrules(n as usize, &zmv, p.sigma(), p.lambda)?;
                    let err = 64.0 * f64::EPSILON * value.abs();
                    v.push(ZetaValue { order: n, value, err, method: spectral_zeta::closedform::ZetaMethod::SumRule });
                }
                v
            }
        };
        (SpectrumProblem::Radial(p), values)
    };
    let text = match a.output.format {
        Format::Json => to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "zeta",
            "problem": problem_json(&problem),
            "values": values.iter().map(zeta_json).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let rows: Vec<Vec<String>> = values
                .iter()
                .map(|z| vec![z.order.to_string(), num(z.value), num(z.err), z.method.label().to_string()])
                .collect();
            to_csv(&["order", "value", "err", "method"], &rows)?
        }
    };
    emit(a.output.output.as_deref(), &text)?;
    Ok(Status::Ok)
}

/// Structured diagnostic for standard error.
pub fn diagnostic(f: &Failure) -> String {
    let mut err = Map::new();
    err.insert("kind".into(), Value::from(f.kind()));
    err.insert("message".into(), Value::from(f.message()));
    err.insert("exit_code".into(), Value::from(f.exit_code()));
    to_json(&json!({"schema_version": SCHEMA_VERSION, "error": Value::Object(err)}))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    Ok(emit(Some(path), text)?)
}
