//! The `hbrackets` command line. Exit codes: 0 pass, 1 verification
//! failure, 2 usage or input error.

pub mod commands;
pub mod config;
pub mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

pub use commands::{
    cmd_bracket, cmd_cone_verify, cmd_example_emit, cmd_example_list, cmd_series_verify,
    cmd_validate, cmd_verify, load_target, Loaded, Suites, Target,
};
pub use config::{CommonArgs, OutputFormat, RunConfig, UnaryArg};
pub use report::{Overall, Report, Tally, TOOL_VERSION};

use crate::error::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "hbrackets",
    version,
    about = "Higher derived brackets of a DGLA, verified exactly"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct TargetArgs {
    /// A DGLA document (JSON).
    #[arg(conflicts_with = "preset")]
    pub path: Option<PathBuf>,
    /// A shipped preset; see `hbrackets example list`.
    #[arg(long)]
    pub preset: Option<String>,
}

impl TargetArgs {
    fn target(&self) -> Option<Target> {
        match (&self.path, &self.preset) {
            (Some(p), _) => Some(Target::File(p.clone())),
            (None, Some(name)) => Some(Target::Preset(name.clone())),
            (None, None) => None,
        }
    }

    fn require(&self) -> Result<Target> {
        self.target()
            .ok_or_else(|| Error::Input("give a document path or --preset".into()))
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the DGLA axioms of a document.
    Validate {
        path: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the verification suites.
    Verify {
        #[command(flatten)]
        target: TargetArgs,
        /// Also check the mapping cone and its path-space model.
        #[arg(long)]
        cone: bool,
        /// Also check the series identities.
        #[arg(long)]
        series: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Evaluate a derived bracket, e.g. `bracket --preset sl2-pq e.p f.p`.
    Bracket {
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        preset: Option<String>,
        /// Elements such as `2*e.p - 1/3*h.q`.
        #[arg(required = true, allow_hyphen_values = true)]
        elements: Vec<String>,
        #[arg(long, value_enum, default_value_t = UnaryArg::Minus)]
        unary: UnaryArg,
    },
    /// Check the mapping-cone brackets, transport and path-space contraction.
    ConeVerify {
        #[command(flatten)]
        target: TargetArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check the Bernoulli and generating-function identities.
    SeriesVerify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// List presets or print the document of one.
    #[command(subcommand)]
    Example(ExampleCommand),
}

#[derive(Subcommand, Debug)]
pub enum ExampleCommand {
    List,
    Emit { name: String },
}

fn emit(report: &Report, format: OutputFormat) -> Result<u8> {
    std::io::stdout().write_all(report.render(format).as_bytes())?;
    Ok(report.exit_code())
}

fn print(text: &str) -> Result<u8> {
    let mut out = std::io::stdout();
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(0)
}

/// Runs a parsed command and returns its exit code.
pub fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Validate { path, common } => {
            let config = RunConfig::from(&common);
            emit(&cmd_validate(&path, &config)?, config.output_format)
        }
        Command::Verify {
            target,
            cone,
            series,
            common,
        } => {
            let config = RunConfig::from(&common);
            let report = cmd_verify(target.target().as_ref(), Suites { cone, series }, &config)?;
            emit(&report, config.output_format)
        }
        Command::Bracket {
            file,
            preset,
            elements,
            unary,
        } => {
            let target = match (file, preset) {
                (Some(p), _) => Target::File(p),
                (None, Some(name)) => Target::Preset(name),
                (None, None) => return Err(Error::Input("give --file or --preset".into())),
            };
            print(&cmd_bracket(&target, &elements, unary.into())?)
        }
        Command::ConeVerify { target, common } => {
            let config = RunConfig::from(&common);
            emit(
                &cmd_cone_verify(&target.require()?, &config)?,
                config.output_format,
            )
        }
        Command::SeriesVerify { common } => {
            let config = RunConfig::from(&common);
            emit(&cmd_series_verify(&config)?, config.output_format)
        }
        Command::Example(ExampleCommand::List) => print(&cmd_example_list()),
        Command::Example(ExampleCommand::Emit { name }) => print(&cmd_example_emit(&name)?),
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("hbrackets: {e}");
            ExitCode::from(2)
        }
    }
}
