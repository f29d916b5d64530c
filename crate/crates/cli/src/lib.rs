//! The `gmk` command line: reads grading and chain specs, runs the library
//! procedures and prints JSON reports or DOT diagrams.
//!
//! Exit status 0 means success, 1 a negative verdict, 2 bad input.

mod certificate;
mod commands;
mod render;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use gmk_core::FormatError;
use serde_json::Value;
use thiserror::Error;

pub use commands::doubling_and_twisting_chains;
pub use render::to_json_text;

pub const DEFAULT_MAX_DIM: usize = 64;

#[derive(Debug, Parser)]
#[command(name = "gmk", version, about = "Gradings on matrix algebras: construct, verify, compare, embed")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; each command accepts a subset.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let value = self.to_possible_value().expect("no skipped variants");
        f.write_str(value.get_name())
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the grading axioms of a grading spec, or re-check a certificate.
    Verify(SpecArgs),
    /// Decide whether two elementary gradings are equivalent.
    Equiv(EquivArgs),
    /// Build a block-diagonal embedding or split a graded module.
    Embed(SpecArgs),
    /// Regularize the fine factor along a graded embedding.
    Regularize(SpecArgs),
    /// Bratteli diagram of a chain spec.
    Bratteli(ChainArgs),
    /// Compare the doubling and twisting chains over Z2.
    #[command(name = "demo-remark1")]
    DemoChains(DepthArgs),
    /// Extract the 2-cocycle of a fine grading.
    Cocycle(SpecArgs),
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    #[arg(long)]
    pub spec: PathBuf,
}

#[derive(Debug, Args)]
pub struct EquivArgs {
    /// `{"factors":[2,2]}`, `[2,2]` or `2x2`.
    #[arg(long)]
    pub group: String,
    /// A tuple such as `[[0,0],[1,0]]`, a signature object, or `@file`.
    #[arg(long)]
    pub tau: String,
    #[arg(long = "tau-prime")]
    pub tau_prime: String,
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
}

#[derive(Debug, Args)]
pub struct DepthArgs {
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Input(String),
    #[error("--format {0} is not supported by this command")]
    UnsupportedFormat(Format),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    Negative = 1,
    InputError = 2,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Success
        } else {
            Status::Negative
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, Copy)]
pub struct Config {
    /// Largest matrix size any command may build.
    pub max_dim: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            max_dim: DEFAULT_MAX_DIM,
        }
    }
}

impl Config {
    pub fn from_env() -> Result<Self, CliError> {
        match std::env::var("GMK_MAX_DIM") {
            Ok(v) => v
                .trim()
                .parse::<usize>()
                .ok()
                .filter(|&d| d > 0)
                .map(|max_dim| Self { max_dim })
                .ok_or_else(|| CliError::Input(format!("GMK_MAX_DIM must be a positive integer, got {v:?}"))),
            Err(_) => Ok(Self::default()),
        }
    }

    fn check_dim(&self, n: usize, what: &str) -> Result<(), CliError> {
        if n > self.max_dim {
            return Err(CliError::Input(format!(
                "{what} has size {n}, above GMK_MAX_DIM = {}",
                self.max_dim
            )));
        }
        Ok(())
    }
}

/// A command's result before rendering.
pub(crate) struct Report {
    pub status: Status,
    pub body: String,
}

impl Report {
    fn json(status: Status, value: &Value) -> Self {
        Self {
            status,
            body: to_json_text(value),
        }
    }

    fn text(status: Status, body: String) -> Self {
        Self { status, body }
    }
}

pub(crate) fn read_spec(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(gmk_core::format::parse_json(&text)?)
}

/// Inline JSON, or the contents of a file when prefixed with `@`.
pub(crate) fn read_inline(text: &str) -> Result<Value, CliError> {
    match text.strip_prefix('@') {
        Some(path) => read_spec(Path::new(path)),
        None => Ok(gmk_core::format::parse_json(text)?),
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { Status::InputError } else { Status::Success };
            let rendered = e.render().to_string();
            let (stdout, stderr) = match status {
                Status::Success => (rendered, String::new()),
                _ => (String::new(), rendered),
            };
            return Outcome { status, stdout, stderr };
        }
    };
    match Config::from_env() {
        Ok(config) => execute(&cli, &config),
        Err(e) => failure(e),
    }
}

fn failure(e: CliError) -> Outcome {
    Outcome {
        status: Status::InputError,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

pub fn execute(cli: &Cli, config: &Config) -> Outcome {
    let format = cli.format;
    let result = match &cli.command {
        Command::Verify(a) => commands::verify(&a.spec, format, config),
        Command::Equiv(a) => commands::equiv(a, format),
        Command::Embed(a) => commands::embed(&a.spec, format, config),
        Command::Regularize(a) => commands::regularize(&a.spec, format, config),
        Command::Bratteli(a) => commands::bratteli(&a.spec, a.depth, format, config),
        Command::DemoChains(a) => commands::demo_doubling_twisting(a.depth, format, config),
        Command::Cocycle(a) => commands::cocycle(&a.spec, format, config),
    };
    match result {
        Ok(report) => Outcome {
            status: report.status,
            stdout: report.body,
            stderr: String::new(),
        },
        Err(e) => failure(e),
    }
}
