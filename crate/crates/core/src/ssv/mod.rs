//! Structured singular value bounds.
//!
//! For a square matrix `M` and an uncertainty structure, `μ(M)` is the
//! reciprocal of the smallest `σ_max(Δ)` over structured `Δ` that make
//! `I − M Δ` singular. It is bracketed here by
//!
//! * an upper bound `min_D σ_max(D M D⁻¹)` over positive diagonal `D`
//!   (see [`mu_upper`]), and
//! * a lower bound certified by an explicit destabilizing `Δ`
//!   (see [`mu_lower`]).
//!
//! For a single full block both bounds collapse to `σ_max(M)`.

mod lower;
pub(crate) mod search;
mod upper;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::matrix::{
    determinant, raw_principal_triplet, raw_sigma_max, sigma_max, ComplexMatrix, MatrixError,
    NumericSettings,
};
use crate::scattering::ScatteringData;

pub(crate) use lower::{power_lower, LowerConfig};
pub(crate) use upper::osborne_scales;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SsvError {
    #[error("structure of dimension {structure} does not match {rows}x{cols} matrix")]
    StructureMismatch {
        structure: usize,
        rows: usize,
        cols: usize,
    },
    #[error("invalid options: {0}")]
    InvalidOptions(String),
    #[error("empty frequency sweep")]
    EmptySweep,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// The class of admissible perturbations `Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UncertaintyStructure {
    /// `Δ = diag(Γ₁, …, Γₙ)`, one complex scalar per port.
    ScalarComplexDiagonal { block_count: usize },
    /// A single unstructured complex block.
    FullComplex { dimension: usize },
}

impl UncertaintyStructure {
    pub fn diagonal(n: usize) -> Self {
        Self::ScalarComplexDiagonal { block_count: n }
    }

    pub fn full(n: usize) -> Self {
        Self::FullComplex { dimension: n }
    }

    pub fn dimension(&self) -> usize {
        match *self {
            Self::ScalarComplexDiagonal { block_count } => block_count,
            Self::FullComplex { dimension } => dimension,
        }
    }

    /// Checks that `m` is square with the structure's dimension.
    pub fn check(&self, m: &ComplexMatrix) -> Result<usize, SsvError> {
        let d = self.dimension();
        if d == 0 || m.n_rows() != d || m.n_cols() != d {
            return Err(SsvError::StructureMismatch {
                structure: d,
                rows: m.n_rows(),
                cols: m.n_cols(),
            });
        }
        Ok(d)
    }
}

/// A structured perturbation.
#[derive(Debug, Clone, PartialEq)]
pub enum DeltaCandidate {
    /// `Γ₁ … Γₙ` of a diagonal perturbation.
    Diagonal(Vec<Complex64>),
    Full(ComplexMatrix),
}

impl DeltaCandidate {
    pub fn to_matrix(&self) -> Result<ComplexMatrix, MatrixError> {
        match self {
            Self::Diagonal(d) => ComplexMatrix::from_diagonal(d),
            Self::Full(m) => Ok(m.clone()),
        }
    }

    pub fn sigma_max(&self) -> f64 {
        match self {
            Self::Diagonal(d) => d.iter().map(|z| z.norm()).fold(0.0, f64::max),
            Self::Full(m) => sigma_max(m),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Self::Diagonal(d) => d.len(),
            Self::Full(m) => m.n_rows(),
        }
    }
}

/// Upper and lower bound on `μ(M)` for one matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SsvBounds {
    pub lower: f64,
    pub upper: f64,
    /// Diagonal of the best `D` found, first entry normalized to 1.
    pub d_scale: Vec<f64>,
    /// Perturbation achieving `lower`, absent when `lower = 0`.
    pub destabilizer: Option<DeltaCandidate>,
}

impl SsvBounds {
    /// `(upper − lower) / upper`, zero when both vanish.
    pub fn relative_gap(&self) -> f64 {
        if self.upper > 0.0 {
            (self.upper - self.lower) / self.upper
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SsvOptions {
    /// Bound on the perturbation gain; 1 is the passivity limit `|Γ| ≤ 1`.
    pub gamma: f64,
    /// Lower-bound restarts (the first one is deterministic, the rest seeded).
    pub restarts: usize,
    pub seed: u64,
    pub max_iterations: usize,
    /// Relative convergence tolerance for both bounds.
    pub convergence_tol: f64,
}

impl Default for SsvOptions {
    fn default() -> Self {
        Self {
            gamma: 1.0,
            restarts: 10,
            seed: 0,
            max_iterations: 200,
            convergence_tol: 1e-9,
        }
    }
}

impl SsvOptions {
    pub fn validate(&self) -> Result<(), SsvError> {
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(SsvError::InvalidOptions(format!(
                "gamma must be positive, got {}",
                self.gamma
            )));
        }
        if self.restarts < 1 {
            return Err(SsvError::InvalidOptions(
                "restarts must be at least 1".into(),
            ));
        }
        if self.max_iterations < 1 {
            return Err(SsvError::InvalidOptions(
                "max_iterations must be at least 1".into(),
            ));
        }
        if !(self.convergence_tol.is_finite() && self.convergence_tol > 0.0) {
            return Err(SsvError::InvalidOptions(format!(
                "convergence_tol must be positive, got {}",
                self.convergence_tol
            )));
        }
        Ok(())
    }

    fn lower_config(&self) -> LowerConfig {
        LowerConfig {
            restarts: self.restarts,
            seed: self.seed,
            max_iterations: self.max_iterations,
            tol: self.convergence_tol,
        }
    }

    fn upper_config(&self, target: f64) -> upper::UpperConfig {
        upper::UpperConfig {
            max_sweeps: self.max_iterations,
            rel_tol: self.convergence_tol,
            target,
        }
    }
}

/// `μ` implied by a perturbation: `1/σ_max(Δ)`, or unbounded for `Δ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ImpliedMu {
    Finite(f64),
    /// `Δ = 0` never destabilizes; serialized as `null`.
    Unbounded,
}

impl ImpliedMu {
    pub fn value(&self) -> Option<f64> {
        match *self {
            Self::Finite(v) => Some(v),
            Self::Unbounded => None,
        }
    }
}

impl Serialize for ImpliedMu {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Finite(v) => s.serialize_f64(*v),
            Self::Unbounded => s.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DestabilizerCheck {
    /// `|det(I − M Δ)|`.
    pub residual: f64,
    pub implied_mu: ImpliedMu,
}

/// Evaluates how well `delta` singularizes `I − M Δ`.
pub fn verify_destabilizer(
    m: &ComplexMatrix,
    delta: &DeltaCandidate,
) -> Result<DestabilizerCheck, SsvError> {
    let n = m.dim()?;
    if delta.dimension() != n {
        return Err(SsvError::StructureMismatch {
            structure: delta.dimension(),
            rows: m.n_rows(),
            cols: m.n_cols(),
        });
    }
    let d = delta.to_matrix()?;
    let md = m.matmul(&d)?;
    let closed = ComplexMatrix::new(DMatrix::identity(n, n) - md.as_inner())?;
    let residual = determinant(&closed)?.norm();
    let s = delta.sigma_max();
    let implied_mu = if s > 0.0 {
        ImpliedMu::Finite(1.0 / s)
    } else {
        ImpliedMu::Unbounded
    };
    Ok(DestabilizerCheck {
        residual,
        implied_mu,
    })
}

/// Sampled H∞ norm: the largest `σ_max(S(f))` over the sweep.
pub fn small_gain_norm(data: &ScatteringData) -> Result<f64, SsvError> {
    if data.points().is_empty() {
        return Err(SsvError::EmptySweep);
    }
    Ok(data
        .points()
        .iter()
        .map(|p| sigma_max(&p.s_matrix))
        .fold(0.0, f64::max))
}

fn ones(n: usize) -> Vec<f64> {
    vec![1.0; n]
}

fn scales_from_logs(x: &[f64]) -> Vec<f64> {
    x.iter().map(|v| (v - x[0]).exp()).collect()
}

fn diagonal_destabilizer(eigenvalue: Complex64, phases: &[Complex64]) -> Option<DeltaCandidate> {
    if eigenvalue.norm() > 0.0 {
        Some(DeltaCandidate::Diagonal(
            phases.iter().map(|q| q / eigenvalue).collect(),
        ))
    } else {
        None
    }
}

/// `Δ = v uᴴ / σ` for the principal pair of `M`.
fn full_destabilizer(m: &DMatrix<Complex64>) -> (f64, Option<DeltaCandidate>) {
    let (sigma, u, v) = raw_principal_triplet(m, &NumericSettings::DEFAULT);
    if sigma == 0.0 {
        return (0.0, None);
    }
    let delta = (&v * u.adjoint()) / Complex64::new(sigma, 0.0);
    let delta = ComplexMatrix::new(delta).ok().map(DeltaCandidate::Full);
    (sigma, delta)
}

fn scalar_bounds(z: Complex64) -> SsvBounds {
    let r = z.norm();
    SsvBounds {
        lower: r,
        upper: r,
        d_scale: vec![1.0],
        destabilizer: (r > 0.0)
            .then(|| DeltaCandidate::Diagonal(vec![Complex64::new(1.0, 0.0) / z])),
    }
}

/// D-scaling upper bound and the optimal diagonal scaling.
///
/// For a full block the value is `σ_max(M)` with unit scaling.
pub fn mu_upper(
    m: &ComplexMatrix,
    s: UncertaintyStructure,
    o: &SsvOptions,
) -> Result<(f64, Vec<f64>), SsvError> {
    let n = s.check(m)?;
    o.validate()?;
    match s {
        UncertaintyStructure::FullComplex { .. } => Ok((
            raw_sigma_max(m.as_inner(), &NumericSettings::DEFAULT),
            ones(n),
        )),
        UncertaintyStructure::ScalarComplexDiagonal { .. } => {
            if n == 1 {
                return Ok((m.get(0, 0).norm(), ones(1)));
            }
            if m.is_zero() {
                return Ok((0.0, ones(n)));
            }
            let r = upper::d_scaled_upper(m.as_inner(), None, &o.upper_config(0.0));
            Ok((r.value, scales_from_logs(&r.log_scales)))
        }
    }
}

/// Certified lower bound and the perturbation that achieves it.
///
/// `None` is returned for the perturbation only when the bound is zero.
pub fn mu_lower(
    m: &ComplexMatrix,
    s: UncertaintyStructure,
    o: &SsvOptions,
) -> Result<(f64, Option<DeltaCandidate>), SsvError> {
    let n = s.check(m)?;
    o.validate()?;
    match s {
        UncertaintyStructure::FullComplex { .. } => Ok(full_destabilizer(m.as_inner())),
        UncertaintyStructure::ScalarComplexDiagonal { .. } => {
            if n == 1 {
                let b = scalar_bounds(m.get(0, 0));
                return Ok((b.lower, b.destabilizer));
            }
            if m.is_zero() {
                return Ok((0.0, None));
            }
            let x = osborne_scales(m.as_inner());
            let r = power_lower(m.as_inner(), &o.lower_config(), Some(&x));
            Ok((r.value, diagonal_destabilizer(r.eigenvalue, &r.phases)))
        }
    }
}

/// Both bounds for one matrix.
///
/// The two searches feed each other: the lower-bound vectors suggest a
/// D-scaling for the upper bound, and the upper bound stops as soon as it
/// meets the certified lower bound.
pub fn mu_bounds(
    m: &ComplexMatrix,
    s: UncertaintyStructure,
    o: &SsvOptions,
) -> Result<SsvBounds, SsvError> {
    let n = s.check(m)?;
    o.validate()?;
    if let UncertaintyStructure::FullComplex { .. } = s {
        let (sigma, destabilizer) = full_destabilizer(m.as_inner());
        return Ok(SsvBounds {
            lower: sigma,
            upper: sigma,
            d_scale: ones(n),
            destabilizer,
        });
    }
    if n == 1 {
        return Ok(scalar_bounds(m.get(0, 0)));
    }
    if m.is_zero() {
        return Ok(SsvBounds {
            lower: 0.0,
            upper: 0.0,
            d_scale: ones(n),
            destabilizer: None,
        });
    }

    let inner = m.as_inner();
    let lower_cfg = o.lower_config();
    let balance = osborne_scales(inner);
    let mut lower = power_lower(inner, &lower_cfg, Some(&balance));
    let warm = lower::scales_from_vectors(&lower.right, &lower.left, Some(&balance));
    let mut upper = upper::d_scaled_upper(inner, warm.as_deref(), &o.upper_config(lower.value));

    if upper.value > lower.value * (1.0 + o.convergence_tol) {
        // retry the lower bound on the better-conditioned D M D⁻¹
        let again = power_lower(inner, &lower_cfg, Some(&upper.log_scales));
        if again.value > lower.value {
            lower = again;
        }
    }

    // both are valid bounds; rounding can leave them crossed by an ulp or two
    let upper_value = upper.value.max(lower.value);
    upper.value = upper_value;
    Ok(SsvBounds {
        lower: lower.value,
        upper: upper.value,
        d_scale: scales_from_logs(&upper.log_scales),
        destabilizer: diagonal_destabilizer(lower.eigenvalue, &lower.phases),
    })
}
