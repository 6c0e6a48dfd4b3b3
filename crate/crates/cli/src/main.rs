use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use nambu_forge::args::Cli;
use nambu_forge::{command_name, error_json, execute, success_json};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.global.json;
    let name = command_name(&cli);
    match execute(&cli, std::io::stdin().lock()) {
        Ok(report) => {
            let out = if json {
                success_json(&report).to_string()
            } else {
                report.text
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::from(if report.passed { 0 } else { 1 })
        }
        Err(e) => {
            if json {
                let _ = writeln!(std::io::stdout().lock(), "{}", error_json(name, &e));
            } else {
                eprintln!("error[{}]: {e}", e.code());
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
