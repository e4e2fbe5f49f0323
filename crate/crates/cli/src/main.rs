mod args;
mod report;

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::Parser;
use nport_ssv::analyzer::{
    analyze_frequency_sweep, classify, find_transition, scale_entry_sweep, SweepPoint, SweepReport,
    DEFAULT_MARGIN_TOL,
};
use nport_ssv::matrix::ComplexMatrix;
use nport_ssv::ssv::{mu_bounds, SsvOptions, UncertaintyStructure};
use nport_ssv::touchstone::{
    read_touchstone, write_touchstone, DataFormat, FrequencyUnit, TouchstoneOptions,
};
use num_complex::Complex64;
use serde::Deserialize;

use args::{Cli, Command, CommonArgs, DataFormatArg, OutputFormat, StructureArg, UnitArg};
use report::{exit_code, Report, ReportOptions};

const ERROR_EXIT: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!("{}", msg.lines().next().unwrap_or("invalid arguments"));
            return ExitCode::from(ERROR_EXIT);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::from(ERROR_EXIT)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Analyze {
            input,
            range,
            common,
        } => {
            let mut data = read_touchstone(&input)?;
            if let Some((lo, hi)) = range {
                data = data.restrict(lo, hi);
            }
            let o = ssv_options(&common)?;
            let report = with_threads(common.threads, || {
                analyze_frequency_sweep(&data, &o, DEFAULT_MARGIN_TOL)
            })??;
            emit_sweep(report, &o, StructureArg::Diag, &common)
        }
        Command::SweepScale {
            input,
            matrix,
            frequency_point,
            entry,
            range,
            points,
            common,
        } => {
            let s = match (input, matrix) {
                (_, Some(text)) => parse_inline_matrix(&text)?,
                (Some(path), None) => matrix_from_file(&path, frequency_point)?,
                (None, None) => bail!("sweep-scale needs an input file or --matrix"),
            };
            let o = ssv_options(&common)?;
            let (row, col) = (entry.0 - 1, entry.1 - 1);
            let report = with_threads(common.threads, || {
                scale_entry_sweep(
                    &s,
                    row,
                    col,
                    range.0,
                    range.1,
                    points,
                    &o,
                    DEFAULT_MARGIN_TOL,
                )
            })??;
            emit_sweep(report, &o, StructureArg::Diag, &common)
        }
        Command::Mu {
            matrix,
            structure,
            common,
        } => {
            let m = parse_inline_matrix(&matrix)?;
            let o = ssv_options(&common)?;
            let n = m.n_rows();
            let s = match structure {
                StructureArg::Diag => UncertaintyStructure::diagonal(n),
                StructureArg::Full => UncertaintyStructure::full(n),
            };
            let start = Instant::now();
            let bounds = mu_bounds(&m, s, &o)?;
            let elapsed_seconds = start.elapsed().as_secs_f64();
            let points = vec![SweepPoint {
                parameter: 0.0,
                bounds,
            }];
            let report = SweepReport {
                verdict: classify(&points, o.gamma, DEFAULT_MARGIN_TOL),
                transition: find_transition(&points, o.gamma),
                points,
                elapsed_seconds,
                intrinsic_stability_asserted: false,
            };
            emit_sweep(report, &o, structure, &common)
        }
        Command::Convert {
            input,
            output,
            data_format,
            unit,
        } => {
            let data = read_touchstone(&input)?;
            let opts = TouchstoneOptions::for_data(&data, unit.into(), data_format.into());
            std::fs::write(&output, write_touchstone(&data, &opts))
                .with_context(|| format!("cannot write {}", output.display()))?;
            Ok(0)
        }
    }
}

fn ssv_options(common: &CommonArgs) -> Result<SsvOptions> {
    let o = SsvOptions {
        gamma: common.gamma,
        restarts: common.restarts,
        seed: common.seed,
        ..SsvOptions::default()
    };
    o.validate()?;
    Ok(o)
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .context("cannot start worker threads")?;
    Ok(pool.install(f))
}

fn emit_sweep(
    report: SweepReport,
    o: &SsvOptions,
    structure: StructureArg,
    common: &CommonArgs,
) -> Result<u8> {
    let report = report.assert_intrinsic_stability(common.assume_internally_stable);
    if let Some(warning) = report.proviso_warning() {
        eprintln!("warning: {warning}");
    }
    let options = ReportOptions::new(*o, DEFAULT_MARGIN_TOL, structure);
    let rendered = Report {
        points: &report.points,
        verdict: &report.verdict,
        transition: report.transition,
        options: &options,
        intrinsic_stability_asserted: report.intrinsic_stability_asserted,
        elapsed_seconds: report.elapsed_seconds,
    };
    let text = match common.format {
        OutputFormat::Json => rendered.to_json(),
        OutputFormat::Csv => rendered.to_csv(),
    };
    match &common.output {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(exit_code(&report.verdict))
}

fn matrix_from_file(path: &Path, point: usize) -> Result<ComplexMatrix> {
    let data = read_touchstone(path)?;
    let n = data.points().len();
    if point == 0 || point > n {
        bail!("--frequency-point {point} is outside 1..={n}");
    }
    Ok(data.points()[point - 1].s_matrix.clone())
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Real(f64),
    Pair([f64; 2]),
}

/// JSON rows of `[re, im]` pairs or bare reals.
fn parse_inline_matrix(text: &str) -> Result<ComplexMatrix> {
    let rows: Vec<Vec<Entry>> = serde_json::from_str(text)
        .context("--matrix must be a JSON array of rows of numbers or [re, im] pairs")?;
    let rows: Vec<Vec<Complex64>> = rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|e| match e {
                    Entry::Real(re) => Complex64::new(re, 0.0),
                    Entry::Pair([re, im]) => Complex64::new(re, im),
                })
                .collect()
        })
        .collect();
    let m = ComplexMatrix::from_rows(&rows)?;
    m.dim()?;
    Ok(m)
}

impl From<UnitArg> for FrequencyUnit {
    fn from(u: UnitArg) -> Self {
        match u {
            UnitArg::Hz => Self::Hz,
            UnitArg::Khz => Self::KHz,
            UnitArg::Mhz => Self::MHz,
            UnitArg::Ghz => Self::GHz,
        }
    }
}

impl From<DataFormatArg> for DataFormat {
    fn from(f: DataFormatArg) -> Self {
        match f {
            DataFormatArg::Ri => Self::RI,
            DataFormatArg::Ma => Self::MA,
            DataFormatArg::Db => Self::DB,
        }
    }
}
