use serde_json::{json, Value};
use spectral_zeta::closedform::{Branch, ProblemSpec};
use spectral_zeta::eigensolver::shoot;

use crate::acceptance::{self, Criterion};
use crate::args::ReportArgs;
use crate::commands::{radial_spectrum, write_text, Failure, Status};
use crate::output::{num, to_csv, to_json, SCHEMA_VERSION};

const WRONSKIAN_SAMPLES: usize = 400;

fn criterion_json(c: &Criterion) -> Value {
    let checks: Vec<Value> = c
        .checks
        .iter()
        .map(|k| {
            json!({
                "name": k.name,
                "measured": k.measured,
                "reference": k.reference,
                "residual": k.residual,
                "tolerance": k.tolerance,
                "pass": k.pass,
            })
        })
        .collect();
    json!({"criterion": c.number, "title": c.title, "pass": c.pass(), "seconds": c.seconds, "checks": checks})
}

fn acceptance_csv(criteria: &[Criterion]) -> Result<String, Failure> {
    let mut rows = Vec::new();
    for c in criteria {
        for k in &c.checks {
            rows.push(vec![
                c.number.to_string(),
                k.name.clone(),
                num(k.measured),
                num(k.reference),
                num(k.residual),
                num(k.tolerance),
                k.pass.to_string(),
            ]);
        }
    }
    Ok(to_csv(&["criterion", "check", "measured", "reference", "residual", "tolerance", "pass"], &rows)?)
}

/// ln(k+1) against ln E_k, and the shooting mismatch across the first
/// levels, for the quartic regular problem at λ = ½.
fn plot_data(levels: usize) -> Result<(String, String), Failure> {
    let p = ProblemSpec::new(2.0, 0.0, 0.5, Branch::Regular)?;
    let s = radial_spectrum(&p, levels)?;
    let e = s.real_energies();
    let rows: Vec<Vec<String>> = e.iter().enumerate().map(|(k, v)| vec![num(((k + 1) as f64).ln()), num(v.ln())]).collect();
    let levels_csv = to_csv(&["x", "y"], &rows)?;
    let top = e.get(9).copied().unwrap_or(e.last().copied().unwrap_or(10.0)) * 1.05;
    let mut rows = Vec::with_capacity(WRONSKIAN_SAMPLES);
    for i in 0..WRONSKIAN_SAMPLES {
        let x = top * (i as f64 + 0.5) / WRONSKIAN_SAMPLES as f64;
        rows.push(vec![num(x), num(shoot(&p, x)?)]);
    }
    Ok((levels_csv, to_csv(&["x", "y"], &rows)?))
}

pub fn cmd_report(a: &ReportArgs) -> Result<Status, Failure> {
    if a.levels < spectral_zeta::zeta_numeric::MIN_FIT_LEVELS {
        return Err(Failure::Config(format!("--levels must be at least {}", spectral_zeta::zeta_numeric::MIN_FIT_LEVELS)));
    }
    let criteria = acceptance::all(a.levels);
    for c in &criteria {
        eprintln!("{}", c.line());
    }
    let all_pass = criteria.iter().all(Criterion::pass);
    let dir = &a.out_dir;
    write_text(&dir.join("acceptance.csv"), &acceptance_csv(&criteria)?)?;
    write_text(
        &dir.join("acceptance.json"),
        &to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "report",
            "levels": a.levels,
            "all_pass": all_pass,
            "criteria": criteria.iter().map(criterion_json).collect::<Vec<_>>(),
        })),
    )?;
    let (levels_csv, wronskian_csv) = plot_data(a.levels)?;
    write_text(&dir.join("levels_plot.csv"), &levels_csv)?;
    write_text(&dir.join("wronskian_plot.csv"), &wronskian_csv)?;
    Ok(if all_pass { Status::Ok } else { Status::VerificationFailed })
}
