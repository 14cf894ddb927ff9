//! Command-line front end: configuration, dispatch and deterministic output.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod format;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::args::{Cli, Command};
use crate::commands::Output;
use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::format::Format;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Output bytes of one command: the main document and an optional summary
/// that accompanies a CSV curve.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub main: String,
    pub summary: Option<String>,
}

/// The configuration a command line resolves to: file (or defaults), then flags.
pub fn effective_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    for g in &cli.grids {
        cfg.apply_grid_override(g)?;
    }
    if cli.aperture_average {
        cfg.aperture_average = true;
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    Ok(cfg)
}

pub fn config_hash(cfg: &RunConfig) -> String {
    Sha256::digest(cfg.to_canonical().as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn execute(cli: &Cli) -> Result<Rendered> {
    let cfg = effective_config(cli)?;
    let output = match &cli.command {
        Command::Constants => commands::constants(&cfg)?,
        Command::Fig2 => commands::fig2(&cfg)?,
        Command::Fig3 => commands::fig3(&cfg)?,
        Command::Fig4 => commands::fig4(&cfg)?,
        Command::Fit { input } => commands::fit(&cfg, input)?,
        Command::Sq => commands::sq(&cfg)?,
        Command::Trajectory => commands::trajectory(&cfg)?,
        Command::FitCalibrate { trials } => commands::fit_calibrate(*trials, cli.seed.unwrap_or(0))?,
        Command::Config => Output::Text(cfg.to_canonical()),
    };
    Ok(render(&output, &cfg, cli.command.name()))
}

pub fn render(output: &Output, cfg: &RunConfig, command: &str) -> Rendered {
    if let Output::Text(text) = output {
        return Rendered {
            main: text.clone(),
            summary: None,
        };
    }
    match cfg.format {
        Format::Csv => match output {
            Output::Table(t) => Rendered {
                main: t.to_csv(),
                summary: None,
            },
            Output::Report(r) => Rendered {
                main: r.to_text(),
                summary: None,
            },
            Output::Both(t, r) => Rendered {
                main: t.to_csv(),
                summary: Some(r.to_text()),
            },
            Output::Text(_) => unreachable!(),
        },
        Format::Json => {
            let mut meta = Map::new();
            meta.insert("command".into(), command.into());
            meta.insert("config_hash".into(), config_hash(cfg).into());
            meta.insert("tool_version".into(), TOOL_VERSION.into());
            let mut doc = Map::new();
            doc.insert("metadata".into(), Value::Object(meta));
            let (table, report) = match output {
                Output::Table(t) => (Some(t), None),
                Output::Report(r) => (None, Some(r)),
                Output::Both(t, r) => (Some(t), Some(r)),
                Output::Text(_) => unreachable!(),
            };
            if let Some(t) = table {
                doc.insert("columns".into(), t.to_json());
            }
            if let Some(r) = report {
                doc.insert("report".into(), r.to_json());
            }
            let mut main = serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable");
            main.push('\n');
            Rendered { main, summary: None }
        }
    }
}

fn emit(cli: &Cli, rendered: &Rendered) -> Result<()> {
    let stdout = std::io::stdout();
    match &cli.out {
        Some(path) => {
            std::fs::write(path, &rendered.main).map_err(|e| CliError::io(path, e))?;
            if let Some(s) = &rendered.summary {
                stdout.lock().write_all(s.as_bytes()).map_err(|e| CliError::io("stdout".as_ref(), e))?;
            }
        }
        None => {
            stdout
                .lock()
                .write_all(rendered.main.as_bytes())
                .map_err(|e| CliError::io("stdout".as_ref(), e))?;
            if let Some(s) = &rendered.summary {
                eprint!("{s}");
            }
        }
    }
    Ok(())
}

/// Parse arguments, run, print; the exit code is 0, 2 (configuration or
/// input problem) or 3 (numerical failure).
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { error::EXIT_CONFIG } else { 0 });
        }
    };
    match execute(&cli).and_then(|r| emit(&cli, &r)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if matches!(e, CliError::Refused(_)) {
                eprintln!("warning: {e}");
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
