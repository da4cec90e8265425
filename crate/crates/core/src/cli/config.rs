use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::derived::UnarySign;
use crate::sweep::{SweepSettings, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TUPLE_CAP};
use crate::verify::VerifyConfig;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum UnaryArg {
    #[default]
    Minus,
    Plus,
}

impl From<UnaryArg> for UnarySign {
    fn from(u: UnaryArg) -> Self {
        match u {
            UnaryArg::Minus => UnarySign::Minus,
            UnaryArg::Plus => UnarySign::Plus,
        }
    }
}

/// Settings shared by every command. Echoed in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub max_arity: usize,
    pub series_order: usize,
    pub tuple_cap: u64,
    pub sample_seed: u64,
    pub sample_count: usize,
    pub unary_sign: UnarySign,
    pub output_format: OutputFormat,
    #[serde(skip)]
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            max_arity: 4,
            series_order: crate::series::DEFAULT_ORDER,
            tuple_cap: DEFAULT_TUPLE_CAP,
            sample_seed: DEFAULT_SEED,
            sample_count: DEFAULT_SAMPLES,
            unary_sign: UnarySign::default(),
            output_format: OutputFormat::default(),
            timing: false,
        }
    }
}

impl RunConfig {
    pub fn verify_config(&self) -> VerifyConfig {
        VerifyConfig {
            max_arity: self.max_arity,
            series_order: self.series_order,
            sweep: SweepSettings {
                tuple_cap: self.tuple_cap,
                seed: self.sample_seed,
                samples: self.sample_count,
            },
            unary: self.unary_sign,
            timing: self.timing,
        }
    }
}

#[derive(Args, Clone, Debug)]
pub struct CommonArgs {
    /// Highest Jacobi rule to check.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=6))]
    pub max_arity: u64,
    /// Series truncation order.
    #[arg(long, default_value_t = crate::series::DEFAULT_ORDER)]
    pub order: usize,
    /// Sweeps with more tuples than this are sampled.
    #[arg(long, default_value_t = DEFAULT_TUPLE_CAP)]
    pub tuple_cap: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Number of sampled tuples above the cap.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Sign of the unary bracket on elements of degree above one.
    #[arg(long, value_enum, default_value_t = UnaryArg::Minus)]
    pub unary: UnaryArg,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Record per-check wall time (makes reports run-dependent).
    #[arg(long)]
    pub timing: bool,
}

impl From<&CommonArgs> for RunConfig {
    fn from(a: &CommonArgs) -> Self {
        Self {
            max_arity: a.max_arity as usize,
            series_order: a.order,
            tuple_cap: a.tuple_cap,
            sample_seed: a.seed,
            sample_count: a.samples,
            unary_sign: a.unary.into(),
            output_format: a.format,
            timing: a.timing,
        }
    }
}
