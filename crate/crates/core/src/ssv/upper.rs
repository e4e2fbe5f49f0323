//! D-scaling upper bound: minimize `σ_max(D M D⁻¹)` over positive diagonal
//! `D = diag(eˣ)` with `x₀ = 0`.
//!
//! The objective is convex in `x` but nonsmooth wherever the top singular
//! value is repeated, which is exactly where the optimum sits when the bound
//! is not tight. Every `D` gives a valid upper bound, so the search may stop
//! at any time, and it does stop as soon as it meets the caller's target
//! (a certified lower bound). The stages are:
//!
//! 1. starting points: `D = I`, Osborne balancing (minimizes the Frobenius
//!    norm of `D M D⁻¹`, one closed-form step per coordinate), and an
//!    optional warm start supplied by the caller;
//! 2. BFGS on `σ_max` using the gradient `∂σ/∂x_i = σ (|u_i|² − |v_i|²)`
//!    of the principal singular pair `(u, v)`;
//! 3. cyclic coordinate descent with golden-section line searches until a
//!    sweep improves the value by less than the relative tolerance.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::search::{bfgs, coordinate_descent, BfgsSettings, DescentSettings};
use crate::matrix::{raw_principal_triplet, raw_singular_values, NumericSettings};

const OSBORNE_SWEEPS: usize = 30;
/// Log-scales are kept inside this box so `eˣ` never overflows.
const X_LIMIT: f64 = 300.0;

#[derive(Debug, Clone)]
pub(crate) struct UpperResult {
    pub value: f64,
    /// Log-scales `x` with `x[0] = 0`.
    pub log_scales: Vec<f64>,
}

pub(crate) struct ScaledSvd<'a> {
    m: &'a DMatrix<Complex64>,
    buf: DMatrix<Complex64>,
    settings: NumericSettings,
}

impl<'a> ScaledSvd<'a> {
    pub(crate) fn new(m: &'a DMatrix<Complex64>) -> Self {
        Self {
            m,
            buf: m.clone(),
            settings: NumericSettings::DEFAULT,
        }
    }

    fn fill(&mut self, x: &[f64]) {
        let n = self.m.nrows();
        for j in 0..n {
            for i in 0..n {
                let s = (x[i].clamp(-X_LIMIT, X_LIMIT) - x[j].clamp(-X_LIMIT, X_LIMIT)).exp();
                self.buf[(i, j)] = self.m[(i, j)] * s;
            }
        }
    }

    pub(crate) fn sigma_max(&mut self, x: &[f64]) -> f64 {
        self.fill(x);
        let v = raw_singular_values(&self.buf, &self.settings).max();
        if v.is_finite() {
            v
        } else {
            f64::MAX
        }
    }

    /// `σ_max` and its gradient `σ (|u_i|² − |v_i|²)` for the principal pair.
    pub(crate) fn sigma_max_and_gradient(&mut self, x: &[f64]) -> (f64, Vec<f64>) {
        self.fill(x);
        let (sigma, u, v) = raw_principal_triplet(&self.buf, &self.settings);
        if !sigma.is_finite() {
            return (f64::MAX, vec![0.0; x.len()]);
        }
        let grad = (0..x.len())
            .map(|i| sigma * (u[i].norm_sqr() - v[i].norm_sqr()))
            .collect();
        (sigma, grad)
    }
}

/// Osborne balancing of `|m|²`: each coordinate step is exact.
pub(crate) fn osborne_scales(m: &DMatrix<Complex64>) -> Vec<f64> {
    let n = m.nrows();
    let w: Vec<f64> = m.iter().map(|z| z.norm_sqr()).collect();
    let at = |i: usize, j: usize| w[i + j * n];
    let mut x = vec![0.0f64; n];
    for _ in 0..OSBORNE_SWEEPS {
        let mut moved = 0.0f64;
        for k in 0..n {
            let mut row = 0.0;
            let mut col = 0.0;
            for (j, &xj) in x.iter().enumerate() {
                if j != k {
                    row += at(k, j) * (-2.0 * xj).exp();
                    col += at(j, k) * (2.0 * xj).exp();
                }
            }
            if row > 0.0 && col > 0.0 {
                let next = (0.25 * (col / row).ln()).clamp(-X_LIMIT / 2.0, X_LIMIT / 2.0);
                moved = moved.max((next - x[k]).abs());
                x[k] = next;
            }
        }
        if moved < 1e-12 {
            break;
        }
    }
    let x0 = x[0];
    x.iter().map(|v| v - x0).collect()
}

pub(crate) struct UpperConfig {
    pub max_sweeps: usize,
    pub rel_tol: f64,
    /// The search stops once the value is within `rel_tol` of this target.
    pub target: f64,
}

pub(crate) fn d_scaled_upper(
    m: &DMatrix<Complex64>,
    warm: Option<&[f64]>,
    cfg: &UpperConfig,
) -> UpperResult {
    let n = m.nrows();
    let mut eval = ScaledSvd::new(m);
    let reached = |v: f64| v <= cfg.target * (1.0 + cfg.rel_tol);

    let mut best_x = vec![0.0; n];
    let mut best = eval.sigma_max(&best_x);
    if n == 1 {
        return UpperResult {
            value: best,
            log_scales: best_x,
        };
    }
    let mut starts = vec![osborne_scales(m)];
    if let Some(w) = warm {
        starts.push(w.to_vec());
    }
    for x in starts {
        let v = eval.sigma_max(&x);
        if v < best {
            best = v;
            best_x = x;
        }
    }
    if reached(best) {
        return UpperResult {
            value: best,
            log_scales: best_x,
        };
    }

    let mut x = best_x.clone();
    let mut tracked = (best, best_x.clone());
    bfgs(
        |x| {
            let (v, g) = eval.sigma_max_and_gradient(x);
            if v < tracked.0 {
                tracked = (v, x.to_vec());
            }
            (v, g)
        },
        &mut x,
        &BfgsSettings {
            max_iterations: cfg.max_sweeps,
            rel_tol: 0.0,
            max_line_evals: 60,
        },
    );
    (best, best_x) = tracked;
    if reached(best) {
        return UpperResult {
            value: best,
            log_scales: best_x,
        };
    }

    let polish = DescentSettings {
        rel_tol: cfg.rel_tol,
        max_sweeps: cfg.max_sweeps,
        t_tol: 1e-10,
        max_line_evals: 80,
    };
    let mut x = best_x.clone();
    let mut steps = vec![1e-3; n];
    let v = coordinate_descent(|x| eval.sigma_max(x), &mut x, &mut steps, &polish, reached);
    if v < best {
        best = v;
        best_x = x;
    }
    UpperResult {
        value: best,
        log_scales: best_x,
    }
}
