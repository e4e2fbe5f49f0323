#![allow(dead_code)]

use nport_ssv::matrix::ComplexMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Square matrix with entries uniform in the unit square of the complex plane.
pub fn complex_matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n * n).prop_map(move |v| {
        let data: Vec<Complex64> = v
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        ComplexMatrix::from_row_major(n, n, &data).unwrap()
    })
}

pub fn sized_matrix(
    sizes: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = ComplexMatrix> {
    sizes.prop_flat_map(complex_matrix)
}

pub fn nonzero_complex() -> impl Strategy<Value = Complex64> {
    (0.1..4.0f64, -3.2..3.2f64).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let data: Vec<Complex64> = (0..n * n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    ComplexMatrix::from_row_major(n, n, &data).unwrap()
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

/// `u vᴴ`.
pub fn outer(u: &[Complex64], v: &[Complex64]) -> ComplexMatrix {
    let n = u.len();
    let data: Vec<Complex64> = (0..n * n).map(|k| u[k / n] * v[k % n].conj()).collect();
    ComplexMatrix::from_row_major(n, n, &data).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}
