use std::fmt::Write as _;

use nport_ssv::analyzer::{StabilityVerdict, SweepPoint};
use nport_ssv::ssv::SsvOptions;
use serde::Serialize;

use crate::args::StructureArg;

#[derive(Debug, Serialize)]
pub struct ReportOptions {
    #[serde(flatten)]
    pub ssv: SsvOptions,
    pub margin_tol: f64,
    pub structure: &'static str,
}

impl ReportOptions {
    pub fn new(ssv: SsvOptions, margin_tol: f64, structure: StructureArg) -> Self {
        Self {
            ssv,
            margin_tol,
            structure: match structure {
                StructureArg::Diag => "diag",
                StructureArg::Full => "full",
            },
        }
    }
}

#[derive(Debug, Serialize)]
struct JsonPoint {
    x: f64,
    mu_lower: f64,
    mu_upper: f64,
}

/// Field order is the output order; `elapsed_seconds` stays last so runs
/// can be compared with it stripped.
#[derive(Debug, Serialize)]
struct JsonReport<'a> {
    verdict: &'static str,
    transition: Option<f64>,
    points: Vec<JsonPoint>,
    options: &'a ReportOptions,
    intrinsic_stability_asserted: bool,
    elapsed_seconds: f64,
}

pub struct Report<'a> {
    pub points: &'a [SweepPoint],
    pub verdict: &'a StabilityVerdict,
    pub transition: Option<f64>,
    pub options: &'a ReportOptions,
    pub intrinsic_stability_asserted: bool,
    pub elapsed_seconds: f64,
}

impl Report<'_> {
    pub fn to_json(&self) -> String {
        let report = JsonReport {
            verdict: self.verdict.name(),
            transition: self.transition,
            points: self
                .points
                .iter()
                .map(|p| JsonPoint {
                    x: p.parameter,
                    mu_lower: p.bounds.lower,
                    mu_upper: p.bounds.upper,
                })
                .collect(),
            options: self.options,
            intrinsic_stability_asserted: self.intrinsic_stability_asserted,
            elapsed_seconds: self.elapsed_seconds,
        };
        let mut s = serde_json::to_string_pretty(&report).expect("report values are finite");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("x,mu_lower,mu_upper\n");
        for p in self.points {
            let _ = writeln!(s, "{},{},{}", p.parameter, p.bounds.lower, p.bounds.upper);
        }
        s
    }
}

pub fn exit_code(verdict: &StabilityVerdict) -> u8 {
    match verdict {
        StabilityVerdict::UnconditionallyStable => 0,
        StabilityVerdict::PotentiallyUnstable { .. } => 1,
        StabilityVerdict::Indeterminate { .. } => 2,
    }
}
