//! Power-iteration lower bound for scalar complex diagonal structures.
//!
//! For unit-modulus `Q = diag(q)`, every eigenvalue `λ` of `M Q` yields the
//! perturbation `Δ = Q / λ` with `det(I − M Δ) = 0` and `σ_max(Δ) = 1/|λ|`,
//! so `ρ(M Q)` is a certified lower bound on `μ(M)`. The iteration below
//! searches for the `Q` maximizing `ρ(M Q)` by alternating a power step on
//! `M` (right vector `a`) and on `Mᴴ` (left vector `w`), re-aligning the
//! phases between the two after each half step:
//!
//! ```text
//! β a   = M b            z_i = |w_i| · a_i / |a_i|
//! β w   = Mᴴ z           b_i = |a_i| · w_i / |w_i|
//! ```
//!
//! At a fixed point `M Q a = β a` with `q_i = phase(w_i · conj(a_i))`.
//! Only the certified value `ρ(M Q)` is ever reported; `β` just drives
//! convergence.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::{raw_dominant_eigenvalue, raw_principal_triplet, NumericSettings};

#[derive(Debug, Clone)]
pub(crate) struct LowerResult {
    /// Certified `ρ(M Q)`.
    pub value: f64,
    /// Dominant eigenvalue of `M Q`; the destabilizer is `Q / λ`.
    pub eigenvalue: Complex64,
    pub phases: Vec<Complex64>,
    /// Right and left vectors of the best run, used to seed D-scales.
    pub right: DVector<Complex64>,
    pub left: DVector<Complex64>,
}

fn unit_phase(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r > 0.0 && r.is_finite() {
        z / r
    } else {
        Complex64::new(1.0, 0.0)
    }
}

fn normalized(mut v: DVector<Complex64>) -> Option<DVector<Complex64>> {
    let n = v.norm();
    if n > 0.0 && n.is_finite() {
        v /= Complex64::new(n, 0.0);
        Some(v)
    } else {
        None
    }
}

struct Certified {
    value: f64,
    eigenvalue: Complex64,
    phases: Vec<Complex64>,
}

fn certify(m: &DMatrix<Complex64>, phases: &[Complex64]) -> Certified {
    let mut mq = m.clone();
    for (j, q) in phases.iter().enumerate() {
        let mut col = mq.column_mut(j);
        col *= *q;
    }
    let lambda = raw_dominant_eigenvalue(&mq, &NumericSettings::DEFAULT);
    Certified {
        value: lambda.norm(),
        eigenvalue: lambda,
        phases: phases.to_vec(),
    }
}

/// One power-iteration run from `(b, w)`; returns the final phases and vectors.
fn power_run(
    m: &DMatrix<Complex64>,
    mh: &DMatrix<Complex64>,
    mut b: DVector<Complex64>,
    mut w: DVector<Complex64>,
    max_iterations: usize,
    tol: f64,
) -> (Vec<Complex64>, DVector<Complex64>, DVector<Complex64>) {
    let n = m.nrows();
    let mut a = b.clone();
    let mut beta_prev = f64::NAN;
    for _ in 0..max_iterations {
        a = match normalized(m * &b) {
            Some(v) => v,
            None => break,
        };
        let z = DVector::from_fn(n, |i, _| unit_phase(a[i]) * w[i].norm());
        let mh_z = mh * &z;
        let beta = mh_z.norm();
        w = match normalized(mh_z) {
            Some(v) => v,
            None => break,
        };
        b = DVector::from_fn(n, |i, _| unit_phase(w[i]) * a[i].norm());
        if (beta - beta_prev).abs() <= tol * beta {
            break;
        }
        beta_prev = beta;
    }
    let phases = (0..n).map(|i| unit_phase(w[i] * a[i].conj())).collect();
    (phases, a, w)
}

pub(crate) struct LowerConfig {
    pub restarts: usize,
    pub seed: u64,
    pub max_iterations: usize,
    pub tol: f64,
}

/// Best certified lower bound over a deterministic start plus seeded restarts.
///
/// `scaling` (log-scales of a diagonal `D`) runs the iteration on the
/// similar matrix `D M D⁻¹`, which has the same `ρ(· Q)` for every `Q`.
pub(crate) fn power_lower(
    m: &DMatrix<Complex64>,
    cfg: &LowerConfig,
    scaling: Option<&[f64]>,
) -> LowerResult {
    let n = m.nrows();
    let one = Complex64::new(1.0, 0.0);

    let work = match scaling {
        Some(x) => DMatrix::from_fn(n, n, |i, j| m[(i, j)] * (x[i] - x[j]).exp()),
        None => m.clone(),
    };
    let work_h = work.adjoint();

    // θ = 0 is always a candidate, so the bound never falls below ρ(M)
    let c0 = certify(m, &vec![one; n]);
    let (_, u0, v0) = raw_principal_triplet(&work, &NumericSettings::DEFAULT);
    let mut best = LowerResult {
        value: c0.value,
        eigenvalue: c0.eigenvalue,
        phases: c0.phases,
        right: v0.clone(),
        left: u0.clone(),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let inv_sqrt_n = 1.0 / (n as f64).sqrt();
    for restart in 0..cfg.restarts.max(1) {
        let (b, w) = if restart == 0 {
            (v0.clone(), u0.clone())
        } else {
            let mut random_unit = || {
                DVector::from_fn(n, |_, _| {
                    let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                    Complex64::from_polar(inv_sqrt_n, theta)
                })
            };
            let b = random_unit();
            let w = random_unit();
            (b, w)
        };
        let (phases, a, w) = power_run(&work, &work_h, b, w, cfg.max_iterations, cfg.tol);
        let c = certify(m, &phases);
        if c.value > best.value {
            best = LowerResult {
                value: c.value,
                eigenvalue: c.eigenvalue,
                phases: c.phases,
                right: a,
                left: w,
            };
        }
    }
    best
}

/// D-scales suggested by a converged lower-bound run: `d_i² = |w_i| / |a_i|`.
///
/// Returns log-scales normalized so the first is zero, or `None` when a
/// vector component vanishes.
pub(crate) fn scales_from_vectors(
    right: &DVector<Complex64>,
    left: &DVector<Complex64>,
    base: Option<&[f64]>,
) -> Option<Vec<f64>> {
    let n = right.len();
    let mut x = Vec::with_capacity(n);
    for i in 0..n {
        let (a, w) = (right[i].norm(), left[i].norm());
        if !(a > 1e-150 && w > 1e-150) {
            return None;
        }
        let shift = base.map_or(0.0, |b| b[i]);
        x.push(0.5 * (w / a).ln() + shift);
    }
    let x0 = x[0];
    Some(x.into_iter().map(|v| v - x0).collect())
}
