use std::process::ExitCode;

use clap::Parser;
use ringcodes_cli::{default_format, run, Cli, EXIT_INVALID, EXIT_MISMATCH};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let format = cli.format.unwrap_or_else(|| default_format(&cli.command));
    match run(&cli) {
        Ok(report) => {
            println!("{}", report.render(format));
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MISMATCH as u8)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
