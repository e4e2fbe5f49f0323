mod common;

use common::{complex_matrix, nonzero_complex, rel_diff, sized_matrix};
use nport_ssv::matrix::{sigma_max, spectral_radius, ComplexMatrix};
use nport_ssv::ssv::{
    mu_bounds, mu_lower, mu_upper, verify_destabilizer, SsvOptions, UncertaintyStructure,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn diag(n: usize) -> UncertaintyStructure {
    UncertaintyStructure::diagonal(n)
}

fn positive_scales(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0..2.0f64, n).prop_map(|x| x.into_iter().map(f64::exp).collect())
}

fn phases(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.2..3.2f64, n)
}

fn similarity(m: &ComplexMatrix, d: &[f64]) -> ComplexMatrix {
    let n = d.len();
    let data: Vec<Complex64> = (0..n * n)
        .map(|k| m.get(k / n, k % n) * (d[k / n] / d[k % n]))
        .collect();
    ComplexMatrix::from_row_major(n, n, &data).unwrap()
}

fn rotate_columns(m: &ComplexMatrix, phi: &[f64]) -> ComplexMatrix {
    let n = phi.len();
    let data: Vec<Complex64> = (0..n * n)
        .map(|k| m.get(k / n, k % n) * Complex64::from_polar(1.0, phi[k % n]))
        .collect();
    ComplexMatrix::from_row_major(n, n, &data).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sandwich_both_structures(m in sized_matrix(1..=6)) {
        let o = SsvOptions::default();
        let n = m.n_rows();
        for s in [UncertaintyStructure::diagonal(n), UncertaintyStructure::full(n)] {
            let (upper, _) = mu_upper(&m, s, &o).unwrap();
            let (lower, _) = mu_lower(&m, s, &o).unwrap();
            prop_assert!(lower <= upper * (1.0 + 1e-12), "{s:?}: {lower} > {upper}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ordering_chain(m in sized_matrix(1..=6)) {
        let o = SsvOptions::default();
        let n = m.n_rows();
        let (upper, _) = mu_upper(&m, diag(n), &o).unwrap();
        let (lower, _) = mu_lower(&m, diag(n), &o).unwrap();
        prop_assert!(upper <= sigma_max(&m) * (1.0 + 1e-9));
        prop_assert!(lower >= spectral_radius(&m).unwrap() * (1.0 - 1e-9));
    }

    #[test]
    fn homogeneity(m in sized_matrix(1..=6), c in nonzero_complex()) {
        let o = SsvOptions::default();
        let n = m.n_rows();
        let scaled = m.scale(c).unwrap();
        let (u, _) = mu_upper(&m, diag(n), &o).unwrap();
        let (uc, _) = mu_upper(&scaled, diag(n), &o).unwrap();
        prop_assert!(rel_diff(uc, c.norm() * u) <= 1e-9, "upper {uc} vs {}", c.norm() * u);
        let (l, _) = mu_lower(&m, diag(n), &o).unwrap();
        let (lc, _) = mu_lower(&scaled, diag(n), &o).unwrap();
        prop_assert!(rel_diff(lc, c.norm() * l) <= 1e-9, "lower {lc} vs {}", c.norm() * l);
    }

    #[test]
    fn diagonal_similarity_invariance(
        (m, d) in (1usize..=6).prop_flat_map(|n| (complex_matrix(n), positive_scales(n)))
    ) {
        let o = SsvOptions::default();
        let n = m.n_rows();
        let a = mu_bounds(&m, diag(n), &o).unwrap().upper;
        let b = mu_bounds(&similarity(&m, &d), diag(n), &o).unwrap().upper;
        prop_assert!((a - b).abs() <= 1e-6 * a.max(b), "{a} vs {b}");
    }

    #[test]
    fn phase_absorption(
        (m, phi) in (1usize..=6).prop_flat_map(|n| (complex_matrix(n), phases(n)))
    ) {
        let o = SsvOptions::default();
        let n = m.n_rows();
        let a = mu_bounds(&m, diag(n), &o).unwrap().upper;
        let b = mu_bounds(&rotate_columns(&m, &phi), diag(n), &o).unwrap().upper;
        prop_assert!(rel_diff(a, b) <= 1e-6, "{a} vs {b}");
    }

    #[test]
    fn destabilizers_are_certified(m in sized_matrix(1..=6)) {
        let o = SsvOptions::default();
        let n = m.n_rows();
        for s in [UncertaintyStructure::diagonal(n), UncertaintyStructure::full(n)] {
            let b = mu_bounds(&m, s, &o).unwrap();
            let delta = b.destabilizer.as_ref().expect("nonzero random matrix");
            let check = verify_destabilizer(&m, delta).unwrap();
            let bound = 1e-6 * (1.0 + sigma_max(&m).powi(n as i32));
            prop_assert!(check.residual <= bound, "{s:?}: residual {}", check.residual);
            prop_assert!(rel_diff(delta.sigma_max(), 1.0 / b.lower) <= 1e-8);
        }
    }

    #[test]
    fn deterministic(m in sized_matrix(1..=5), seed in any::<u64>()) {
        let o = SsvOptions { seed, ..SsvOptions::default() };
        let s = diag(m.n_rows());
        prop_assert_eq!(mu_bounds(&m, s, &o).unwrap(), mu_bounds(&m, s, &o).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tight_up_to_three_blocks(m in sized_matrix(1..=3)) {
        let b = mu_bounds(&m, diag(m.n_rows()), &SsvOptions::default()).unwrap();
        prop_assert!(b.relative_gap() <= 1e-4, "gap {} ({} .. {})", b.relative_gap(), b.lower, b.upper);
    }

    #[test]
    fn full_block_is_sigma_max(m in sized_matrix(1..=6)) {
        let b = mu_bounds(&m, UncertaintyStructure::full(m.n_rows()), &SsvOptions::default()).unwrap();
        let s = sigma_max(&m);
        prop_assert!(rel_diff(b.upper, s) <= 1e-9 && rel_diff(b.lower, s) <= 1e-9);
    }
}
