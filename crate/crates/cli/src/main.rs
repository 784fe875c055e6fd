//! `triet`: command-line front end for the three-interval exchange toolkit.

mod commands;
mod jobs;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use commands::Command;

#[derive(Parser, Debug)]
#[command(name = "triet", version, about = "Exact symmetric three-interval exchanges")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    #[command(flatten)]
    params: Params,

    /// Output format; `table1` defaults to text, everything else to json.
    #[arg(long, global = true, value_enum)]
    out: Option<OutFormat>,

    /// Run a JSON array of jobs instead of a single command.
    #[arg(long, value_name = "PATH")]
    jobs: Option<PathBuf>,

    /// Run the jobs of a job file concurrently.
    #[arg(long, requires = "jobs")]
    parallel: bool,
}

/// Command parameters, shared by the flags and the job file.
#[derive(Args, Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params {
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(deserialize_with = "jobs::literal")]
    pub alpha: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(deserialize_with = "jobs::literal")]
    pub beta: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(deserialize_with = "jobs::literal")]
    pub gamma: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(deserialize_with = "jobs::literal")]
    pub delta: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(deserialize_with = "jobs::literal")]
    pub rho: Option<String>,
    /// Length, count or order, depending on the command.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Iteration cap for orbit searches.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Morphism such as `A=ABA,B=C,C=BAC`.
    #[arg(long, global = true)]
    pub map: Option<String>,
    #[arg(long, global = true)]
    pub map2: Option<String>,
    /// A factor, or the seed letter of a fixed point.
    #[arg(long, global = true)]
    pub word: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutFormat {
    Json,
    Text,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(triet_core::Error),
    File { kind: &'static str, message: String },
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Domain(e) => e.kind(),
            CliError::File { kind, .. } => kind,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let message = match self {
            CliError::Usage(m) => m.clone(),
            CliError::Domain(e) => e.to_string(),
            CliError::File { message, .. } => message.clone(),
        };
        let mut error = json!({ "kind": self.kind(), "message": message });
        if let CliError::Domain(triet_core::Error::Degenerate { witness: Some(w), .. }) = self {
            error["witness"] = json!(w);
        }
        json!({ "error": error })
    }
}

impl From<triet_core::Error> for CliError {
    fn from(e: triet_core::Error) -> Self {
        CliError::Domain(e)
    }
}

pub fn render(value: &Value, format: OutFormat) -> String {
    match format {
        OutFormat::Json => serde_json::to_string(value).expect("values serialize"),
        OutFormat::Text => commands::to_text(value),
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    if let Some(path) = &cli.jobs {
        if cli.command.is_some() {
            return Err(CliError::Usage("--jobs cannot be combined with a command".into()));
        }
        let report = jobs::run_file(path, cli.parallel)?;
        return Ok(render(&report, cli.out.unwrap_or(OutFormat::Json)));
    }
    let Some(command) = cli.command else {
        return Err(CliError::Usage("a command or --jobs <PATH> is required".into()));
    };
    let format = cli.out.unwrap_or(command.default_format());
    let value = command.execute(&cli.params)?;
    Ok(render(&value, format))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.out.unwrap_or(OutFormat::Json);
    match run(cli) {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!("{}", render(&e.to_json(), format));
            ExitCode::from(e.exit_code())
        }
    }
}
