use std::process::ExitCode;

use clap::Parser;

use qmatcount_cli::cli::{exit_code, run, Cli, EXIT_USAGE};
use qmatcount_cli::report::{write_atomic, Report};

fn emit(cli: &Cli, report: &Report) -> Result<(), String> {
    let text = report.render(cli.common.format);
    match &cli.common.out {
        Some(path) => write_atomic(path, &text).map_err(|e| format!("writing {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, code) = match run(&cli) {
        Ok(report) => {
            let code = exit_code(&report);
            (Some(report), code)
        }
        Err(failure) => {
            eprintln!("qmatcount: {}", failure.message);
            (failure.report, failure.code)
        }
    };
    if let Some(report) = report {
        if let Err(e) = emit(&cli, &report) {
            eprintln!("qmatcount: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    }
    ExitCode::from(code as u8)
}
