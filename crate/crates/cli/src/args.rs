use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "nport-ssv",
    version,
    about = "Unconditional stability of linear n-port networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound μ at every frequency of a Touchstone file and give a verdict.
    Analyze {
        input: PathBuf,
        /// Frequency window in Hz, e.g. 1e9:2e9.
        #[arg(long, value_parser = parse_range)]
        range: Option<(f64, f64)>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Scale one entry of a matrix by c over a range and track μ(c).
    SweepScale {
        /// Touchstone file; its matrix at --frequency-point is swept.
        input: Option<PathBuf>,
        /// Inline matrix instead of a file.
        #[arg(long, conflicts_with = "input")]
        matrix: Option<String>,
        /// 1-based frequency point of the Touchstone file.
        #[arg(long, default_value_t = 1)]
        frequency_point: usize,
        /// 1-based entry to scale.
        #[arg(long, value_parser = parse_entry)]
        entry: (usize, usize),
        #[arg(long, value_parser = parse_range)]
        range: (f64, f64),
        #[arg(long, default_value_t = 1000)]
        points: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Bound μ of a single inline matrix.
    Mu {
        #[arg(long)]
        matrix: String,
        #[arg(long, value_enum, default_value_t = StructureArg::Diag)]
        structure: StructureArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Rewrite a Touchstone file with another unit or data format.
    Convert {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = DataFormatArg::Ri)]
        data_format: DataFormatArg,
        #[arg(long, value_enum, default_value_t = UnitArg::Ghz)]
        unit: UnitArg,
    },
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Bound on the termination reflection coefficients.
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub restarts: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// The network is known to be stable with its nominal terminations.
    #[arg(long)]
    pub assume_internally_stable: bool,
    /// Worker threads for sweeps, 0 picks automatically.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StructureArg {
    Diag,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DataFormatArg {
    Ri,
    Ma,
    Db,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UnitArg {
    Hz,
    Khz,
    Mhz,
    Ghz,
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or("expected A:B")?;
    let a: f64 = a.trim().parse().map_err(|_| format!("bad number '{a}'"))?;
    let b: f64 = b.trim().parse().map_err(|_| format!("bad number '{b}'"))?;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(format!("range {a}:{b} must be finite and increasing"));
    }
    Ok((a, b))
}

fn parse_entry(s: &str) -> Result<(usize, usize), String> {
    let (r, c) = s.split_once(',').ok_or("expected R,C")?;
    let r: usize = r.trim().parse().map_err(|_| format!("bad row '{r}'"))?;
    let c: usize = c.trim().parse().map_err(|_| format!("bad column '{c}'"))?;
    if r == 0 || c == 0 {
        return Err("entries are 1-based".into());
    }
    Ok((r, c))
}
