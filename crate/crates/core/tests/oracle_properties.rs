mod common;

use common::{complex_matrix, sized_matrix};
use nport_ssv::oracle::{phase_grid_lower_bound, OracleConfig};
use nport_ssv::ssv::{mu_lower, mu_upper, SsvOptions, UncertaintyStructure};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn oracle_never_exceeds_upper(m in sized_matrix(1..=3)) {
        let n = m.n_rows();
        let points = if n == 3 { 32 } else { 128 };
        let oracle = phase_grid_lower_bound(&m, &OracleConfig::with_points(points)).unwrap().value;
        let (upper, _) = mu_upper(&m, UncertaintyStructure::diagonal(n), &SsvOptions::default()).unwrap();
        prop_assert!(oracle <= upper * (1.0 + 1e-9), "{oracle} > {upper}");
    }

    #[test]
    fn oracle_agrees_with_lower_bound(m in complex_matrix(2)) {
        let s = UncertaintyStructure::diagonal(2);
        let o = SsvOptions::default();
        let oracle = phase_grid_lower_bound(&m, &OracleConfig::default()).unwrap().value;
        let (lower, _) = mu_lower(&m, s, &o).unwrap();
        let (upper, _) = mu_upper(&m, s, &o).unwrap();
        prop_assert!((oracle - lower).abs() <= 2e-3 * upper, "oracle {oracle}, lower {lower}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn doubling_resolution_never_decreases(m in sized_matrix(1..=3)) {
        let mut prev = 0.0;
        for points in [4, 8, 16, 32] {
            let v = phase_grid_lower_bound(&m, &OracleConfig::with_points(points)).unwrap().value;
            prop_assert!(v >= prev);
            prev = v;
        }
    }
}
