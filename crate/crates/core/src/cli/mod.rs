// Copyright 2026 The dyncp Authors
//
// Licensed under the Apache license, version 2.0 (the "license");
// you may not use this file except in compliance with the license.
// You may obtain a copy of the license at
//
//     http://www.apache.org/licenses/license-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the license is distributed on an "as is" basis,
// without warranties or conditions of any kind, either express or implied.
// See the license for the specific language governing permissions and
// limitations under the license.

//! Command-line front end: configuration loading, sweeps, output and plots.

pub mod config;
pub mod oracle;
pub mod output;
pub mod plot;
pub mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use config::{OutputFormat, Quantity, RunConfig};

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "DYNCP_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    ConfigRead {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("config parse error: {0}")]
    ConfigParse(String),
    #[error("invalid config field `{field}`: {message}")]
    ConfigInvalid { field: String, message: String },
    #[error("cannot write {path}: {source}")]
    Output {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

/// Outcome of a completed command, mapped onto the process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// Everything converged (or every oracle shell was within threshold).
    Ok,
    /// Some point failed to converge, or an oracle shell exceeded the threshold.
    Failed,
}

impl Status {
    pub fn exit_code(&self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "dyncp", version, about = "Dynamical three-body Casimir-Polder energies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the configured sweep.
    Run(CommonArgs),
    /// Compare brute-force mode sums with the analytic reductions.
    Oracle(CommonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// TOML configuration file.
    pub config: PathBuf,
    /// Output file; overrides `output.path`. Standard output when neither is set.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; overrides `output.format`.
    #[arg(long, value_parser = clap::value_parser!(OutputFormat))]
    pub format: Option<OutputFormat>,
    /// Also write an SVG plot next to the output file.
    #[arg(long)]
    pub plot: bool,
    /// Worker threads (0 picks one per core).
    #[arg(long, env = THREADS_ENV)]
    pub threads: Option<usize>,
    /// Suppress the summary on standard error.
    #[arg(long)]
    pub quiet: bool,
}

/// Resolved output settings after applying the command-line overrides.
#[derive(Debug, Clone)]
pub struct OutputTarget {
    pub path: Option<PathBuf>,
    pub format: OutputFormat,
    pub plot: bool,
}

impl OutputTarget {
    pub fn resolve(args: &CommonArgs, config: &RunConfig) -> Self {
        OutputTarget {
            path: args.out.clone().or_else(|| config.output.path.as_ref().map(PathBuf::from)),
            format: args.format.unwrap_or(config.output.format),
            plot: args.plot || config.output.plot,
        }
    }
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Pool(e.to_string()))
}

/// Runs one subcommand and returns its status.
pub fn execute(command: &Command) -> Result<Status, CliError> {
    match command {
        Command::Run(args) => {
            let config = RunConfig::load(&args.config)?;
            config.validate_run()?;
            let target = OutputTarget::resolve(args, &config);
            let pool = pool(args.threads)?;
            run::run(&config, &target, &pool, args.quiet)
        }
        Command::Oracle(args) => {
            let config = RunConfig::load(&args.config)?;
            config.validate_oracle()?;
            let target = OutputTarget::resolve(args, &config);
            let pool = pool(args.threads)?;
            oracle::oracle(&config, &target, &pool, args.quiet)
        }
    }
}

/// Entry point shared by the binary: parse, execute, map to an exit code.
pub fn main_with_args<I, S>(args: I) -> ExitCode
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(&cli.command) {
        Ok(status) => ExitCode::from(status.exit_code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
