use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use spectral_zeta_cli::args::{expand_config, Cli, Command};
use spectral_zeta_cli::commands::{cmd_eig, cmd_zeta, diagnostic, Failure, Status};
use spectral_zeta_cli::report::cmd_report;
use spectral_zeta_cli::verify::cmd_verify;

fn threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("SPECTRAL_ZETA_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Config(format!("SPECTRAL_ZETA_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(Failure::config)
}

fn run() -> Result<Status, Failure> {
    let argv = expand_config(std::env::args().collect()).map_err(Failure::Config)?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(std::io::stdout(), "{e}");
            return Ok(Status::Ok);
        }
        Err(e) => return Err(Failure::Config(e.to_string().trim_end().to_string())),
    };
    threads()?;
    match &cli.command {
        Command::Eig(a) => cmd_eig(a),
        Command::Zeta(a) => cmd_zeta(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Report(a) => cmd_report(a),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::VerificationFailed) => ExitCode::from(1),
        Err(f) => {
            eprint!("{}", diagnostic(&f));
            ExitCode::from(f.exit_code())
        }
    }
}
