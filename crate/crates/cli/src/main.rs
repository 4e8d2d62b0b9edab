mod args;
mod commands;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::{ContextKind, ContextValue, ErrorKind};
use clap::Parser;

use args::Cli;
use report::{CliError, Rendered};

/// Worker count from `NBPERC_THREADS`; 0 or unset lets rayon decide.
fn thread_count() -> Result<usize, CliError> {
    match std::env::var("NBPERC_THREADS") {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map_err(|_| CliError::usage("NBPERC_THREADS", format!("expected a non-negative integer, got `{v}`"))),
        _ => Ok(0),
    }
}

fn clap_error(e: clap::Error) -> CliError {
    let field = match e.get(ContextKind::InvalidArg) {
        Some(ContextValue::String(s)) => Some(s.clone()),
        Some(ContextValue::Strings(v)) => v.first().cloned(),
        _ => None,
    }
    .map(|s| {
        // "--p <P>" -> "p"
        let name = s.split_whitespace().next().unwrap_or(&s);
        name.trim_start_matches('-').to_string()
    });
    let message = e.kind().as_str().map(str::to_string).unwrap_or_else(|| {
        e.to_string().lines().next().unwrap_or_default().to_string()
    });
    let detail = e.to_string();
    let first = detail.lines().next().unwrap_or_default().trim_start_matches("error: ");
    CliError::Usage {
        field,
        message: if first.is_empty() { message } else { first.to_string() },
    }
}

fn sidecar_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn write_outputs(cli: &Cli, r: &Rendered) -> Result<(), CliError> {
    let output = match &cli.command {
        args::Command::Gen(a) => &a.out.output,
        args::Command::Rho(a) => &a.out.output,
        args::Command::OlgCheck(a) => &a.out.output,
        args::Command::Growth(a) => &a.out.output,
        args::Command::Percolate(a) => &a.out.output,
        args::Command::TauTable(a) => &a.out.output,
        args::Command::Bounds(a) => &a.out.output,
        args::Command::RhoLimit(a) => &a.out.output,
        args::Command::EnvelopeVerify(a) => &a.out.output,
    };
    match output {
        Some(path) => {
            let io = |e: std::io::Error| CliError::runtime(format!("writing {}: {e}", path.display()));
            std::fs::write(path, &r.body).map_err(io)?;
            if let Some(side) = &r.sidecar {
                std::fs::write(sidecar_path(path), side).map_err(io)?;
            }
            println!("{}", r.summary);
        }
        None => {
            print!("{}", r.body);
            eprintln!("{}", r.summary);
        }
    }
    Ok(())
}

fn execute() -> Result<(), CliError> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => return Err(clap_error(e)),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count()?)
        .build()
        .map_err(CliError::runtime)?;
    let rendered = pool.install(|| commands::run(&cli))?;
    write_outputs(&cli, &rendered)
}

fn main() -> ExitCode {
    match execute() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.record());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
