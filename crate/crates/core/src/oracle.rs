//! Brute-force lower bound on `μ` for small diagonal structures.
//!
//! For fixed phases `θ`, the smallest `t` with `det(I − t M diag(e^{jθ})) = 0`
//! is `1/ρ(M diag(e^{jθ}))`, so every grid point certifies a lower bound and
//! the maximum over a uniform phase grid is the oracle's answer. It shares no
//! code with the engine's power iteration beyond the eigenvalue kernel.
//!
//! A common phase shift of all `θ_i` only rotates the eigenvalues, and the
//! uniform grid is closed under shifts by a grid step, so `θ₁` is pinned to
//! zero without changing the result.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::matrix::{raw_spectral_radius, ComplexMatrix, MatrixError, NumericSettings};

/// Upper limit on `phase_points_per_axisⁿ`.
pub const MAX_GRID_SIZE: f64 = 1e8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("phase grid needs at least 4 points per axis, got {0}")]
    TooFewPoints(usize),
    #[error("{ports}-port matrix exceeds the oracle limit of {max_ports} ports")]
    TooManyPorts { ports: usize, max_ports: usize },
    #[error("phase grid of {points}^{ports} points exceeds the evaluation guard")]
    GridTooLarge { points: usize, ports: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub phase_points_per_axis: usize,
    pub max_ports: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            phase_points_per_axis: 256,
            max_ports: 4,
        }
    }
}

impl OracleConfig {
    pub fn with_points(phase_points_per_axis: usize) -> Self {
        Self {
            phase_points_per_axis,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Largest `ρ(M diag(e^{jθ}))` on the grid.
    pub value: f64,
    /// Maximizing phases in radians (`θ₁ = 0`).
    pub best_phases: Vec<f64>,
}

/// Maximizes `ρ(M diag(e^{jθ}))` over a uniform phase grid starting at 0.
///
/// Ties keep the lexicographically smallest phase vector.
pub fn phase_grid_lower_bound(
    m: &ComplexMatrix,
    cfg: &OracleConfig,
) -> Result<OracleResult, OracleError> {
    let n = m.dim()?;
    let points = cfg.phase_points_per_axis;
    if points < 4 {
        return Err(OracleError::TooFewPoints(points));
    }
    if n > cfg.max_ports {
        return Err(OracleError::TooManyPorts {
            ports: n,
            max_ports: cfg.max_ports,
        });
    }
    if (points as f64).powi(n as i32) > MAX_GRID_SIZE {
        return Err(OracleError::GridTooLarge { points, ports: n });
    }

    let step = std::f64::consts::TAU / points as f64;
    let unit: Vec<Complex64> = (0..points)
        .map(|k| Complex64::from_polar(1.0, k as f64 * step))
        .collect();
    let base = m.as_inner();
    let settings = NumericSettings::DEFAULT;

    let mut index = vec![0usize; n];
    let mut best_index = index.clone();
    let mut best = raw_spectral_radius(base, &settings);
    let mut scaled = DMatrix::<Complex64>::zeros(n, n);
    // odometer over axes 1..n, axis 0 pinned at θ = 0
    loop {
        let mut axis = n;
        while axis > 1 {
            axis -= 1;
            index[axis] += 1;
            if index[axis] < points {
                break;
            }
            index[axis] = 0;
        }
        if index.iter().all(|&i| i == 0) {
            break;
        }
        for j in 0..n {
            let q = unit[index[j]];
            for i in 0..n {
                scaled[(i, j)] = base[(i, j)] * q;
            }
        }
        let rho = raw_spectral_radius(&scaled, &settings);
        if rho > best {
            best = rho;
            best_index.copy_from_slice(&index);
        }
    }

    Ok(OracleResult {
        value: best,
        best_phases: best_index.iter().map(|&k| k as f64 * step).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_matrix_is_phase_independent() {
        let m = ComplexMatrix::from_diagonal(&[c(0.5, 0.0), c(2.0, 0.0)]).unwrap();
        let r = phase_grid_lower_bound(&m, &OracleConfig::with_points(16)).unwrap();
        // unit phasors are exact only to an ulp
        assert!((r.value - 2.0).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn zero_matrix() {
        let r = phase_grid_lower_bound(&ComplexMatrix::zeros(3, 3), &OracleConfig::with_points(8))
            .unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn all_ones_attains_two_at_zero_phase() {
        let m = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [1.0, 1.0]]).unwrap();
        let r = phase_grid_lower_bound(&m, &OracleConfig::with_points(64)).unwrap();
        assert!((r.value - 2.0).abs() < 1e-3);
    }

    #[test]
    fn rank_one_closed_form_at_fine_resolution() {
        // u = (1, 2), v = (1, 1): μ = Σ|u_i v_i| = 3
        let m = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [2.0, 2.0]]).unwrap();
        let r = phase_grid_lower_bound(&m, &OracleConfig::with_points(1024)).unwrap();
        assert!((r.value - 3.0).abs() < 1e-4, "{}", r.value);
    }

    #[test]
    fn guards() {
        let m = ComplexMatrix::identity(2);
        assert_eq!(
            phase_grid_lower_bound(&m, &OracleConfig::with_points(3)),
            Err(OracleError::TooFewPoints(3))
        );
        let big = ComplexMatrix::identity(5);
        assert!(matches!(
            phase_grid_lower_bound(&big, &OracleConfig::with_points(4)),
            Err(OracleError::TooManyPorts { ports: 5, .. })
        ));
        let m4 = ComplexMatrix::identity(4);
        assert!(matches!(
            phase_grid_lower_bound(&m4, &OracleConfig::with_points(128)),
            Err(OracleError::GridTooLarge { .. })
        ));
        assert!(
            phase_grid_lower_bound(&ComplexMatrix::zeros(2, 3), &OracleConfig::default()).is_err()
        );
    }

    #[test]
    fn doubling_resolution_never_decreases() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(0.2, 0.7), c(-0.4, 0.1), c(0.3, -0.3)],
            vec![c(0.9, 0.0), c(0.1, 0.5), c(-0.6, 0.2)],
            vec![c(0.0, -0.8), c(0.5, 0.5), c(0.2, 0.1)],
        ])
        .unwrap();
        let mut prev = 0.0;
        for points in [4, 8, 16, 32, 64] {
            let v = phase_grid_lower_bound(&m, &OracleConfig::with_points(points))
                .unwrap()
                .value;
            assert!(v >= prev, "{points}: {v} < {prev}");
            prev = v;
        }
    }
}
