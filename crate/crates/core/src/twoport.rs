//! Classical two-port stability factors.
//!
//! Rollett's `K` together with `|Δ| < 1`, and the Edwards–Sinsky `μ > 1`,
//! are necessary and sufficient for unconditional stability of a two-port
//! that is stable with its nominal terminations.

use num_complex::Complex64;
use thiserror::Error;

use crate::matrix::ComplexMatrix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TwoPortError {
    #[error("expected a 2x2 scattering matrix, got {rows}x{cols}")]
    NotTwoPort { rows: usize, cols: usize },
    #[error("Rollett K is undefined when S12*S21 = 0 (unilateral device)")]
    UnilateralK,
    #[error("Edwards-Sinsky mu is undefined: zero denominator")]
    ZeroDenominator,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPortFactors {
    /// Rollett `K`.
    pub k: f64,
    /// `|S11 S22 − S12 S21|`.
    pub det_magnitude: f64,
    /// Edwards–Sinsky factor, absent when its denominator vanishes.
    pub mu_es: Option<f64>,
}

impl TwoPortFactors {
    /// `K > 1` and `|Δ| < 1`.
    pub fn rollett_stable(&self) -> bool {
        self.k > 1.0 && self.det_magnitude < 1.0
    }
}

struct Entries {
    s11: Complex64,
    s12: Complex64,
    s21: Complex64,
    s22: Complex64,
}

fn entries(s: &ComplexMatrix) -> Result<Entries, TwoPortError> {
    if s.n_rows() != 2 || s.n_cols() != 2 {
        return Err(TwoPortError::NotTwoPort {
            rows: s.n_rows(),
            cols: s.n_cols(),
        });
    }
    Ok(Entries {
        s11: s.get(0, 0),
        s12: s.get(0, 1),
        s21: s.get(1, 0),
        s22: s.get(1, 1),
    })
}

/// `K = (1 − |S11|² − |S22|² + |Δ|²) / (2 |S12 S21|)`, with `|Δ|` and `μ_ES`
/// filled in alongside.
pub fn rollett_k(s: &ComplexMatrix) -> Result<TwoPortFactors, TwoPortError> {
    let e = entries(s)?;
    let loop_gain = (e.s12 * e.s21).norm();
    if loop_gain == 0.0 {
        return Err(TwoPortError::UnilateralK);
    }
    let det = e.s11 * e.s22 - e.s12 * e.s21;
    let d = det.norm();
    let k = (1.0 - e.s11.norm_sqr() - e.s22.norm_sqr() + d * d) / (2.0 * loop_gain);
    Ok(TwoPortFactors {
        k,
        det_magnitude: d,
        mu_es: edwards_sinsky_mu(s).ok(),
    })
}

/// `μ = (1 − |S11|²) / (|S22 − Δ S11*| + |S12 S21|)`.
pub fn edwards_sinsky_mu(s: &ComplexMatrix) -> Result<f64, TwoPortError> {
    let e = entries(s)?;
    let det = e.s11 * e.s22 - e.s12 * e.s21;
    let denom = (e.s22 - det * e.s11.conj()).norm() + (e.s12 * e.s21).norm();
    if denom == 0.0 {
        return Err(TwoPortError::ZeroDenominator);
    }
    Ok((1.0 - e.s11.norm_sqr()) / denom)
}
