use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "stieltjes",
    version,
    about = "Stieltjes constants: exact quadrature and saddle-point asymptotics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a single constant.
    Compute(ComputeArgs),
    /// Reproduce one of the reference tables.
    Table(TableArgs),
    /// One-term values on a real grid around an ill-conditioned index.
    Scan(ScanArgs),
    /// Check the integral identities and print their residuals.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    OneTerm,
    MTerm,
    Leading,
    Kc,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Extra `n,gamma` reference values.
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
    /// Use the saddle of `n+2` for every term.
    #[arg(long)]
    pub shared_saddle: bool,
    /// Add wall-clock time per record.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub n: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::MTerm)]
    pub method: MethodArg,
    /// Number of saddle terms for `m-term`.
    #[arg(long, default_value_t = 3)]
    pub terms: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub which: u8,
    #[arg(long, default_value_t = 3)]
    pub terms: usize,
    /// Mirror the printed layout: verbatim reference strings, mixed
    /// fixed/scientific numbers, blanks where the source has none.
    #[arg(long)]
    pub paper_format: bool,
    /// Leave cells blank where the source table has no entry.
    #[arg(long)]
    pub strict: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 137.0)]
    pub center: f64,
    #[arg(long)]
    pub lo: Option<f64>,
    #[arg(long)]
    pub hi: Option<f64>,
    #[arg(long, default_value_t = 0.001)]
    pub step: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}
