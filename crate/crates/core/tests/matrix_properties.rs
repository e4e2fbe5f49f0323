mod common;

use common::{complex_matrix, nonzero_complex, rel_diff, sized_matrix};
use nalgebra::DMatrix;
use nport_ssv::matrix::{determinant, sigma_max, spectral_radius, ComplexMatrix};
use proptest::prelude::*;

fn unitary(m: &ComplexMatrix) -> ComplexMatrix {
    let q: DMatrix<_> = m.as_inner().clone().qr().q();
    ComplexMatrix::new(q).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn spectral_radius_below_sigma_max(m in sized_matrix(1..=8)) {
        let rho = spectral_radius(&m).unwrap();
        let s = sigma_max(&m);
        prop_assert!(rho <= s * (1.0 + 1e-12) + 1e-300, "rho {rho} > sigma {s}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn sigma_max_is_homogeneous(m in sized_matrix(1..=8), c in nonzero_complex()) {
        let scaled = m.scale(c).unwrap();
        prop_assert!(rel_diff(sigma_max(&scaled), c.norm() * sigma_max(&m)) <= 1e-10);
    }

    #[test]
    fn determinant_is_multiplicative(
        (a, b) in (2usize..=6).prop_flat_map(|n| (complex_matrix(n), complex_matrix(n)))
    ) {
        let da = determinant(&a).unwrap();
        let db = determinant(&b).unwrap();
        let dab = determinant(&a.matmul(&b).unwrap()).unwrap();
        prop_assert!((dab - da * db).norm() <= 1e-8 * (1.0 + (da * db).norm()));
    }

    #[test]
    fn sigma_max_is_unitarily_invariant(
        (m, u, v) in (1usize..=8).prop_flat_map(|n| (complex_matrix(n), complex_matrix(n), complex_matrix(n)))
    ) {
        let (u, v) = (unitary(&u), unitary(&v));
        let rotated = u.matmul(&m).unwrap().matmul(&v).unwrap();
        prop_assert!(rel_diff(sigma_max(&rotated), sigma_max(&m)) <= 1e-10);
    }

    #[test]
    fn kernels_are_deterministic(m in sized_matrix(1..=6)) {
        prop_assert_eq!(sigma_max(&m).to_bits(), sigma_max(&m.clone()).to_bits());
        prop_assert_eq!(
            spectral_radius(&m).unwrap().to_bits(),
            spectral_radius(&m.clone()).unwrap().to_bits()
        );
    }
}
