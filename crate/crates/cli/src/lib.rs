pub mod args;
pub mod commands;
pub mod config;
pub mod error;

use std::io::Read;

use serde_json::{json, Value};

use crate::args::Cli;
use crate::commands::{Context, Inputs, Report};
use crate::config::{resolve, FileConfig, Overrides};
use crate::error::CliError;

/// Runs a parsed command line and returns the report or the error.
pub fn execute<R: Read>(cli: &Cli, stdin: R) -> Result<Report, CliError> {
    let g = &cli.global;
    let file = g.config.as_deref().map(FileConfig::load).transpose()?;
    let over = Overrides {
        nu_order: g.nu_order,
        t_order: g.t_order,
        seed: g.seed,
        jobs: g.jobs,
    };
    let settings = resolve(&over, file.as_ref());
    let mut ctx = Context {
        settings: &settings,
        vars: g.vars.as_deref(),
        inputs: Inputs::new(stdin),
    };
    commands::run(&cli.command, &mut ctx)
}

pub fn success_json(r: &Report) -> Value {
    json!({ "command": r.command, "ok": true, "passed": r.passed, "text": r.text, "result": r.result })
}

pub fn error_json(command: &str, e: &CliError) -> Value {
    json!({ "command": command, "ok": false, "error": { "code": e.code(), "message": e.to_string() } })
}

pub fn command_name(cli: &Cli) -> &'static str {
    use crate::args::Command::*;
    match cli.command {
        Factor { .. } => "factor",
        Star { .. } => "star",
        Nambu { .. } => "nambu",
        CheckFi { .. } => "check-fi",
        Zariski { .. } => "zariski",
        Sun { .. } => "sun",
        Equiv { .. } => "equiv",
        Spectrum { .. } => "spectrum",
        Evolve { .. } => "evolve",
        Coeffs { .. } => "coeffs",
    }
}
