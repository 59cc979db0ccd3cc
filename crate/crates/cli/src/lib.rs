//! Command-line front end: sequence generation and checks, closed-form
//! bounds, single-shot PAPR, Monte Carlo CCDFs and the preamble comparison.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::Map;

pub mod commands;
pub mod config;
pub mod error;
pub mod manifest;

pub use error::{CliError, CliResult};

use config::Globals;

#[derive(Debug, Parser)]
#[command(name = "fbmc-golay", version, about = "Low-PAPR Golay preambles for FBMC/OQAM")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args, Serialize)]
pub struct GlobalArgs {
    /// Seed for the random data symbols
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Samples per symbol interval, as a multiple of the subcarrier count
    #[arg(long, global = true)]
    pub oversample: Option<usize>,
    /// Directory for output files
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    /// Print the report as JSON
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub json: bool,
    /// JSON config file (or a run manifest) supplying defaults for any flag
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a Davis-Jedwab Golay pair and check it
    GenGolay(commands::GenGolayArgs),
    /// Check whether two sequences form a Golay complementary pair
    VerifyGcp(commands::VerifyGcpArgs),
    /// Closed-form sigma = 0 PAPR bounds of the prototype filters
    Bounds(commands::BoundsArgs),
    /// PAPR of one frame realization over the preamble window
    Papr(commands::PaprArgs),
    /// Monte Carlo preamble PAPR CCDF
    Ccdf(commands::CcdfArgs),
    /// PAPR of the sparse Golay, sparse m-sequence and IAM-C preambles
    Compare(commands::CompareArgs),
    /// Write prototype filter taps as CSV
    FilterDump(commands::FilterDumpArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::GenGolay(_) => "gen-golay",
            Self::VerifyGcp(_) => "verify-gcp",
            Self::Bounds(_) => "bounds",
            Self::Papr(_) => "papr",
            Self::Ccdf(_) => "ccdf",
            Self::Compare(_) => "compare",
            Self::FilterDump(_) => "filter-dump",
        }
    }
}

/// What a command hands back for printing.
pub struct Outcome {
    pub text: String,
    pub json: serde_json::Value,
    /// Print `json` instead of `text`.
    pub as_json: bool,
    /// Set when the command ran but its check failed.
    pub failure: Option<CliError>,
}

impl Outcome {
    pub fn new<S: Serialize>(g: &Globals, text: String, report: &S) -> CliResult<Self> {
        let json = serde_json::to_value(report).map_err(|e| CliError::Runtime(e.to_string()))?;
        Ok(Self { text, json, as_json: g.json, failure: None })
    }
}

fn resolve<A>(file: &Map<String, serde_json::Value>, global: &GlobalArgs, args: &A) -> CliResult<(Globals, A)>
where
    A: Serialize + for<'de> Deserialize<'de>,
{
    let mut merged = file.clone();
    config::overlay(&mut merged, global)?;
    config::overlay(&mut merged, args)?;
    Ok((config::extract(&merged)?, config::extract(&merged)?))
}

pub fn execute(cli: Cli) -> CliResult<Outcome> {
    let file = match &cli.global.config {
        Some(path) => config::load(path)?,
        None => Map::new(),
    };
    let g = &cli.global;
    match cli.command {
        Command::GenGolay(a) => {
            let (g, a) = resolve(&file, g, &a)?;
            commands::gen_golay(&g, a)
        }
        Command::VerifyGcp(a) => {
            let (g, a) = resolve(&file, g, &a)?;
            commands::verify_gcp(&g, a)
        }
        Command::Bounds(a) => {
            let (g, a) = resolve(&file, g, &a)?;
            commands::bounds(&g, a)
        }
        Command::Papr(a) => {
            let (g, a) = resolve(&file, g, &a)?;
            commands::papr(&g, a)
        }
        Command::Ccdf(a) => {
            let (g, a) = resolve(&file, g, &a)?;
            commands::ccdf(&g, a)
        }
        Command::Compare(a) => {
            let (g, a) = resolve(&file, g, &a)?;
            commands::compare(&g, a)
        }
        Command::FilterDump(a) => {
            let (g, a) = resolve(&file, g, &a)?;
            commands::filter_dump(&g, a)
        }
    }
}

/// Parses `args`, runs the command, prints the report to `out` and
/// diagnostics to `err`, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let command = cli.command.name();
    let outcome = match execute(cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "fbmc-golay {command}: {e}");
            return e.exit_code();
        }
    };
    let printed = if outcome.as_json {
        let text = serde_json::to_string_pretty(&outcome.json).unwrap_or_default();
        writeln!(out, "{text}")
    } else {
        write!(out, "{}", outcome.text)
    };
    if let Err(e) = printed {
        let _ = writeln!(err, "fbmc-golay {command}: cannot write report: {e}");
        return 2;
    }
    match outcome.failure {
        Some(e) => {
            let _ = writeln!(err, "fbmc-golay {command}: {e}");
            e.exit_code()
        }
        None => 0,
    }
}
