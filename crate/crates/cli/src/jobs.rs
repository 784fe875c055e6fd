use std::path::Path;

use clap::Parser;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer};
use serde_json::{json, Value};

use crate::commands::Command;
use crate::{render, CliError, OutFormat, Params};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Job {
    /// e.g. `"induce"` or `"morphism mirror"`
    command: String,
    #[serde(default)]
    parameters: Params,
    #[serde(default)]
    output: Option<OutFormat>,
}

#[derive(Parser)]
#[command(no_binary_name = true)]
struct JobCommand {
    #[command(subcommand)]
    command: Command,
}

/// Exact literals may be written as strings or as JSON integers.
pub fn literal<'de, D: Deserializer<'de>>(d: D) -> Result<Option<String>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Literal {
        Text(String),
        Int(i64),
    }
    Ok(Option::<Literal>::deserialize(d)?.map(|l| match l {
        Literal::Text(s) => s,
        Literal::Int(n) => n.to_string(),
    }))
}

fn run_job(raw: &Value) -> Result<(String, Value), (String, CliError)> {
    let name = raw
        .get("command")
        .and_then(Value::as_str)
        .unwrap_or("")
        .to_string();
    let job: Job = serde_json::from_value(raw.clone())
        .map_err(|e| (name.clone(), CliError::Usage(format!("malformed job: {e}"))))?;
    let parsed = JobCommand::try_parse_from(job.command.split_whitespace())
        .map_err(|e| (name.clone(), CliError::Usage(e.to_string().trim().to_string())))?;
    let format = job.output.unwrap_or(parsed.command.default_format());
    let value = parsed.command.execute(&job.parameters).map_err(|e| (name.clone(), e))?;
    let result = match format {
        OutFormat::Json => value,
        OutFormat::Text => Value::String(render(&value, OutFormat::Text)),
    };
    Ok((name, result))
}

fn entry(index: usize, outcome: Result<(String, Value), (String, CliError)>) -> Value {
    match outcome {
        Ok((command, result)) => json!({
            "index": index,
            "command": command,
            "status": "ok",
            "result": result,
        }),
        Err((command, e)) => json!({
            "index": index,
            "command": command,
            "status": "error",
            "error": e.to_json()["error"],
        }),
    }
}

/// Runs every job of the file; a failing job is flagged without stopping
/// the others.
pub fn run_file(path: &Path, parallel: bool) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::File {
        kind: if e.kind() == std::io::ErrorKind::NotFound {
            "FileNotFound"
        } else {
            "FileUnreadable"
        },
        message: format!("{}: {e}", path.display()),
    })?;
    let jobs: Vec<Value> = serde_json::from_str(&text).map_err(|e| CliError::File {
        kind: "JobFileSyntax",
        message: format!("{}: expected a JSON array of jobs: {e}", path.display()),
    })?;
    let entries: Vec<Value> = if parallel {
        jobs.par_iter()
            .enumerate()
            .map(|(k, job)| entry(k, run_job(job)))
            .collect()
    } else {
        jobs.iter().enumerate().map(|(k, job)| entry(k, run_job(job))).collect()
    };
    let failed = entries.iter().filter(|e| e["status"] == "error").count();
    Ok(json!({
        "jobs": entries,
        "summary": { "total": jobs.len(), "ok": jobs.len() - failed, "failed": failed },
    }))
}
