use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(
    name = "spectral-zeta",
    version,
    about = "Spectra, spectral zeta values and sum-rule checks for anharmonic oscillators",
    args_override_self = true
)]
pub struct Cli {
    /// JSON file whose keys are flag names; flags given after it override it
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve for the lowest levels of a radial or PT problem
    Eig(EigArgs),
    /// Evaluate spectral zeta values
    Zeta(ZetaArgs),
    /// Run an identity suite over a parameter grid
    Verify(VerifyArgs),
    /// Reproduce the acceptance table with plot data
    Report(ReportArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ProblemArgs {
    /// Anharmonic exponent M > 1
    #[arg(long = "M")]
    pub exponent: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long, value_enum, default_value_t = BranchArg::Minus)]
    pub branch: BranchArg,
    /// Fusion level; selects the PT problem
    #[arg(long = "K")]
    pub fusion: Option<u32>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchArg {
    Minus,
    Plus,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; standard output when absent
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigMethod {
    Shooting,
    Collocation,
}

#[derive(Args, Debug, Clone)]
pub struct EigArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = EigMethod::Shooting)]
    pub method: EigMethod,
    /// Collocation basis size (default max(4·count, 200))
    #[arg(long)]
    pub basis: Option<usize>,
    /// Also write ln(k+1) against ln E_k as x,y columns
    #[arg(long)]
    pub plot: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaMethodArg {
    ClosedForm,
    EigSum,
    SumRule,
}

#[derive(Args, Debug, Clone)]
pub struct ZetaArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Orders, comma separated
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub n: Vec<u32>,
    #[arg(long, value_enum, default_value_t = ZetaMethodArg::ClosedForm)]
    pub method: ZetaMethodArg,
    /// Levels solved before the tail model takes over
    #[arg(long, default_value_t = 60)]
    pub levels: usize,
    #[arg(long, default_value_t = 1e-13)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Radial,
    Fused,
    Alpha,
    Qw,
    Hyper,
    Calg,
    Iom,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    ClosedForm,
    EigSum,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub sigma: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub lambda: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub orders: Vec<usize>,
    #[arg(long = "K", value_delimiter = ',')]
    pub fusion: Vec<u32>,
    /// Where Z∓(1), Z∓(2) come from; order 3 always uses spectra
    #[arg(long, value_enum, default_value_t = Source::ClosedForm)]
    pub source: Source,
    #[arg(long, default_value_t = 60)]
    pub levels: usize,
    /// Energies for the small-E expansion check
    #[arg(long, value_delimiter = ',')]
    pub energies: Vec<f64>,
    /// Expansion variable values for the T(s) check
    #[arg(long = "s", value_delimiter = ',')]
    pub s_grid: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ReportArgs {
    #[arg(long, default_value = "report")]
    pub out_dir: PathBuf,
    /// Levels per spectrum
    #[arg(long, default_value_t = 60)]
    pub levels: usize,
}

const SUBCOMMANDS: [&str; 4] = ["eig", "zeta", "verify", "report"];

/// Rewrites `--config file` into the equivalent flags. The file is a JSON
/// object with a `command` key (and `suite` for verify); every other key is
/// a long flag name, lists become comma-separated values and `true` becomes
/// a bare switch. A flag given on the command line replaces the config value.
pub fn expand_config(argv: Vec<String>) -> Result<Vec<String>, String> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut path = None;
    let mut it = argv.into_iter();
    let bin = it.next().unwrap_or_else(|| "spectral-zeta".into());
    while let Some(a) = it.next() {
        if a == "--config" {
            path = Some(it.next().ok_or("--config needs a path")?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else {
        let mut out = vec![bin];
        out.extend(rest);
        return Ok(out);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| format!("config {path} is not valid JSON: {e}"))?;
    let obj = value.as_object().ok_or_else(|| format!("config {path} must be a JSON object"))?;
    let command = obj
        .get("command")
        .and_then(Value::as_str)
        .ok_or_else(|| format!("config {path} needs a string \"command\""))?;
    if !SUBCOMMANDS.contains(&command) {
        return Err(format!("unknown command \"{command}\" in {path}"));
    }
    let mut out = vec![bin, command.to_string()];
    if rest.first().map(String::as_str) == Some(command) {
        rest.remove(0);
    }
    if let Some(suite) = obj.get("suite") {
        out.push(suite.as_str().ok_or("\"suite\" must be a string")?.to_string());
        if rest.first().map(String::as_str) == suite.as_str() {
            rest.remove(0);
        }
    }
    let given: Vec<&str> = rest
        .iter()
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a))
        .collect();
    for (key, v) in obj {
        let name = key.replace('_', "-");
        if key == "command" || key == "suite" || given.contains(&name.as_str()) {
            continue;
        }
        let flag = format!("--{name}");
        match v {
            Value::Bool(true) => out.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                let parts: Result<Vec<String>, String> = items.iter().map(|x| scalar(key, x)).collect();
                out.push(format!("{flag}={}", parts?.join(",")));
            }
            other => out.push(format!("{flag}={}", scalar(key, other)?)),
        }
    }
    out.extend(rest);
    Ok(out)
}

fn scalar(key: &str, v: &Value) -> Result<String, String> {
    match v {
        Value::Number(n) => Ok(n.to_string()),
        Value::String(s) => Ok(s.clone()),
        _ => Err(format!("config key \"{key}\" must be a number, string or list of them")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn passes_through_without_config() {
        let a = argv(&["bin", "eig", "--M", "2"]);
        assert_eq!(expand_config(a.clone()).unwrap(), a);
    }

    #[test]
    fn config_flags_precede_command_line() {
        let dir = std::env::temp_dir().join(format!("sz-args-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.json");
        std::fs::write(&path, r#"{"command":"verify","suite":"radial","sigma":[0.3,0.25],"lambda":0.4}"#).unwrap();
        let out = expand_config(argv(&["bin", "--config", path.to_str().unwrap(), "--lambda", "0.2"])).unwrap();
        assert_eq!(out, argv(&["bin", "verify", "radial", "--sigma=0.3,0.25", "--lambda", "0.2"]));
        let cli = Cli::try_parse_from(out).unwrap();
        match cli.command {
            Command::Verify(v) => {
                assert_eq!(v.lambda, vec![0.2]);
                assert_eq!(v.sigma, vec![0.3, 0.25]);
            }
            _ => panic!("wrong subcommand"),
        }
    }
}
