//! Frequency and parametric sweeps of `μ` bounds, stability verdicts and
//! transition detection.
//!
//! A network is unconditionally stable when `μ(S(f)) ≤ γ` at every
//! frequency (γ = 1 for passive terminations). Verdicts are drawn only from
//! the sampled points; nothing is claimed between samples.
//!
//! The per-point computations are independent and run on the current rayon
//! pool. Results are always ordered by parameter value, so the report does
//! not depend on the thread count.

use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::matrix::ComplexMatrix;
use crate::scattering::ScatteringData;
use crate::ssv::{mu_bounds, SsvBounds, SsvError, SsvOptions, UncertaintyStructure};

/// Default certification margin: stable requires `upper < γ (1 − 1e-6)`.
pub const DEFAULT_MARGIN_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("nothing to analyze: the sweep has no points")]
    Empty,
    #[error("entry ({row}, {col}) is outside a {n}x{n} matrix")]
    IndexOutOfRange { row: usize, col: usize, n: usize },
    #[error("a sweep needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("invalid sweep range {from}..{to}")]
    BadRange { from: f64, to: f64 },
    #[error("margin tolerance must be in [0, 1), got {0}")]
    BadMargin(f64),
    #[error(transparent)]
    Ssv(#[from] SsvError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum StabilityVerdict {
    UnconditionallyStable,
    /// Some sampled point has a certified `μ ≥ γ`. For parametric sweeps the
    /// "frequency" fields carry the sweep parameter.
    PotentiallyUnstable {
        worst_frequency: f64,
        worst_lower: f64,
    },
    /// The bounds straddle `γ` at the listed points and nowhere is `μ ≥ γ`
    /// certified.
    Indeterminate {
        gap_frequencies: Vec<f64>,
    },
}

impl StabilityVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            Self::UnconditionallyStable => "UnconditionallyStable",
            Self::PotentiallyUnstable { .. } => "PotentiallyUnstable",
            Self::Indeterminate { .. } => "Indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    /// Frequency in Hz, or the dimensionless scale coefficient.
    pub parameter: f64,
    pub bounds: SsvBounds,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub points: Vec<SweepPoint>,
    pub verdict: StabilityVerdict,
    /// First parameter value where the upper bound crosses `γ`.
    pub transition: Option<f64>,
    /// Wall-clock time of the numeric phase.
    pub elapsed_seconds: f64,
    /// Whether the caller vouched that the network is stable with its
    /// nominal terminations. Only then does a stable verdict mean
    /// unconditional stability; the analysis never sets this itself.
    pub intrinsic_stability_asserted: bool,
}

impl SweepReport {
    /// Records the caller's assertion of intrinsic stability.
    pub fn assert_intrinsic_stability(mut self, asserted: bool) -> Self {
        self.intrinsic_stability_asserted = asserted;
        self
    }

    /// Warning to surface when a stable verdict rests on an unasserted proviso.
    pub fn proviso_warning(&self) -> Option<&'static str> {
        (self.verdict == StabilityVerdict::UnconditionallyStable
            && !self.intrinsic_stability_asserted)
            .then_some(
                "stable verdict assumes the network is stable with nominal terminations; \
                 this was not asserted",
            )
    }
}

/// Verdict from sampled bounds against the level `gamma`.
pub fn classify(points: &[SweepPoint], gamma: f64, margin_tol: f64) -> StabilityVerdict {
    let mut worst: Option<&SweepPoint> = None;
    for p in points {
        if p.bounds.lower >= gamma && worst.is_none_or(|w| p.bounds.lower > w.bounds.lower) {
            worst = Some(p);
        }
    }
    if let Some(w) = worst {
        return StabilityVerdict::PotentiallyUnstable {
            worst_frequency: w.parameter,
            worst_lower: w.bounds.lower,
        };
    }
    let stable_below = gamma * (1.0 - margin_tol);
    let gaps: Vec<f64> = points
        .iter()
        .filter(|p| p.bounds.upper >= stable_below)
        .map(|p| p.parameter)
        .collect();
    if gaps.is_empty() {
        StabilityVerdict::UnconditionallyStable
    } else {
        StabilityVerdict::Indeterminate {
            gap_frequencies: gaps,
        }
    }
}

/// Crossing of the upper-bound curve through `level`.
///
/// Linear interpolation between the first adjacent pair on opposite sides
/// of `level`; a first sample exactly at `level` is its own crossing.
pub fn find_transition(points: &[SweepPoint], level: f64) -> Option<f64> {
    let first = points.first()?;
    if first.bounds.upper == level {
        return Some(first.parameter);
    }
    points.windows(2).find_map(|w| {
        let (a, b) = (&w[0], &w[1]);
        let (ua, ub) = (a.bounds.upper, b.bounds.upper);
        if (ua < level) == (ub < level) {
            return None;
        }
        let t = (level - ua) / (ub - ua);
        Some(a.parameter + t * (b.parameter - a.parameter))
    })
}

fn check_margin(margin_tol: f64) -> Result<(), AnalysisError> {
    if (0.0..1.0).contains(&margin_tol) {
        Ok(())
    } else {
        Err(AnalysisError::BadMargin(margin_tol))
    }
}

fn evaluate<F>(
    params: &[f64],
    matrix_at: F,
    o: &SsvOptions,
    margin_tol: f64,
) -> Result<SweepReport, AnalysisError>
where
    F: Fn(usize) -> Result<ComplexMatrix, AnalysisError> + Sync,
{
    check_margin(margin_tol)?;
    o.validate()?;
    let start = Instant::now();
    let points = params
        .par_iter()
        .enumerate()
        .map(|(i, &parameter)| {
            let m = matrix_at(i)?;
            let s = UncertaintyStructure::diagonal(m.n_rows());
            Ok(SweepPoint {
                parameter,
                bounds: mu_bounds(&m, s, o)?,
            })
        })
        .collect::<Result<Vec<_>, AnalysisError>>()?;
    let verdict = classify(&points, o.gamma, margin_tol);
    let transition = find_transition(&points, o.gamma);
    Ok(SweepReport {
        points,
        verdict,
        transition,
        elapsed_seconds: start.elapsed().as_secs_f64(),
        intrinsic_stability_asserted: false,
    })
}

/// `μ` bounds with one scalar block per port at every sampled frequency.
pub fn analyze_frequency_sweep(
    data: &ScatteringData,
    o: &SsvOptions,
    margin_tol: f64,
) -> Result<SweepReport, AnalysisError> {
    if data.is_empty() {
        return Err(AnalysisError::Empty);
    }
    let params: Vec<f64> = data.frequencies().collect();
    let points = data.points();
    evaluate(&params, |i| Ok(points[i].s_matrix.clone()), o, margin_tol)
}

/// Uniform grid of `n_points` values from `from` to `to`, both included.
pub fn linear_grid(from: f64, to: f64, n_points: usize) -> Result<Vec<f64>, AnalysisError> {
    if n_points < 2 {
        return Err(AnalysisError::TooFewPoints(n_points));
    }
    if !(from.is_finite() && to.is_finite() && from < to) {
        return Err(AnalysisError::BadRange { from, to });
    }
    let span = to - from;
    let last = (n_points - 1) as f64;
    Ok((0..n_points)
        .map(|k| {
            if k == n_points - 1 {
                to
            } else {
                from + span * (k as f64 / last)
            }
        })
        .collect())
}

/// Sweeps `c` over a uniform grid, replacing `s[row, col]` by `c · s[row, col]`.
///
/// Indices are zero-based.
#[allow(clippy::too_many_arguments)]
pub fn scale_entry_sweep(
    s: &ComplexMatrix,
    row: usize,
    col: usize,
    c_from: f64,
    c_to: f64,
    n_points: usize,
    o: &SsvOptions,
    margin_tol: f64,
) -> Result<SweepReport, AnalysisError> {
    let n = s.dim().map_err(SsvError::from)?;
    if row >= n || col >= n {
        return Err(AnalysisError::IndexOutOfRange { row, col, n });
    }
    let grid = linear_grid(c_from, c_to, n_points)?;
    let original = s.get(row, col);
    evaluate(
        &grid,
        |i| {
            let mut m = s.clone();
            m.set(row, col, original * Complex64::new(grid[i], 0.0))
                .map_err(SsvError::from)?;
            Ok(m)
        },
        o,
        margin_tol,
    )
}
