//! Report envelopes and error records.

use std::fmt::Display;

use nbperc_core::graph::GraphDescriptor;
use serde::Serialize;
use serde_json::json;

use crate::args::{Cli, Format};

pub const TOOL: &str = "nbperc";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Wrapper shared by every JSON report.
#[derive(Serialize)]
struct Report<'a, T> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    master_seed: u64,
    config: &'a Cli,
    graph: Option<GraphDescriptor>,
    result: T,
}

#[derive(Debug)]
pub enum CliError {
    Usage { field: Option<String>, message: String },
    Runtime { message: String },
}

impl CliError {
    pub fn usage(field: &str, message: impl Display) -> Self {
        Self::Usage {
            field: Some(field.to_string()),
            message: message.to_string(),
        }
    }

    pub fn runtime(message: impl Display) -> Self {
        Self::Runtime {
            message: message.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage { .. } => 2,
            Self::Runtime { .. } => 1,
        }
    }

    pub fn record(&self) -> String {
        let value = match self {
            Self::Usage { field, message } => {
                json!({"error": {"kind": "usage", "field": field, "message": message}})
            }
            Self::Runtime { message } => {
                json!({"error": {"kind": "runtime", "field": null, "message": message}})
            }
        };
        value.to_string()
    }
}

/// A finished command: the main artifact, an optional JSON sidecar and a
/// one-line summary.
pub struct Rendered {
    pub body: String,
    pub sidecar: Option<String>,
    pub summary: String,
}

pub fn json_report<T: Serialize>(cli: &Cli, graph: Option<GraphDescriptor>, result: T) -> String {
    let report = Report {
        tool: TOOL,
        version: VERSION,
        command: cli.command.name(),
        master_seed: cli.master_seed,
        config: cli,
        graph,
        result,
    };
    let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
    s.push('\n');
    s
}

pub fn csv_table<R: Serialize>(rows: &[R], header: &[&str]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).map_err(CliError::runtime)?;
    for r in rows {
        w.serialize(r).map_err(CliError::runtime)?;
    }
    let bytes = w.into_inner().map_err(CliError::runtime)?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Renders `result` as JSON, or `rows` as CSV with the fixed `header`.
pub fn emit<T: Serialize, R: Serialize>(
    cli: &Cli,
    format: Format,
    graph: Option<GraphDescriptor>,
    result: T,
    rows: &[R],
    header: &[&str],
    summary: String,
) -> Result<Rendered, CliError> {
    let body = match format {
        Format::Json => json_report(cli, graph, result),
        Format::Csv => csv_table(rows, header)?,
    };
    Ok(Rendered {
        body,
        sidecar: None,
        summary,
    })
}
