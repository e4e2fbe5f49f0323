use nport_ssv::matrix::ComplexMatrix;
use nport_ssv::scattering::{FrequencyPoint, ScatteringData};
use nport_ssv::touchstone::{
    parse_touchstone, parse_touchstone_bytes, write_touchstone, DataFormat, FrequencyUnit,
    TouchstoneOptions,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn unit() -> impl Strategy<Value = FrequencyUnit> {
    prop_oneof![
        Just(FrequencyUnit::Hz),
        Just(FrequencyUnit::KHz),
        Just(FrequencyUnit::MHz),
        Just(FrequencyUnit::GHz),
    ]
}

/// Arbitrary finite values, including extremes and signed zeros.
fn any_finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        4 => -1.0..1.0f64,
        1 => any::<f64>().prop_filter("finite", |v| v.is_finite()),
        1 => Just(-0.0),
    ]
}

fn scattering(n: usize, format_safe: bool) -> impl Strategy<Value = ScatteringData> {
    let entry = if format_safe {
        (-1.0..1.0f64).boxed()
    } else {
        any_finite().boxed()
    };
    let matrix = prop::collection::vec((entry.clone(), entry), n * n).prop_map(move |v| {
        let data: Vec<Complex64> = v
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        ComplexMatrix::from_row_major(n, n, &data).unwrap()
    });
    (
        prop::collection::vec((1e-3..1e12f64, matrix), 1..6),
        prop_oneof![Just(50.0), 1.0..200.0f64],
    )
        .prop_map(move |(mut rows, z0)| {
            rows.sort_by(|a, b| a.0.total_cmp(&b.0));
            rows.dedup_by(|a, b| a.0 == b.0);
            let points = rows
                .into_iter()
                .map(|(frequency, s_matrix)| FrequencyPoint {
                    frequency,
                    s_matrix,
                })
                .collect();
            ScatteringData::new(n, z0, points).unwrap()
        })
}

fn bit_identical(a: &ScatteringData, b: &ScatteringData) -> bool {
    a.n_ports() == b.n_ports()
        && a.reference_impedance().to_bits() == b.reference_impedance().to_bits()
        && a.points().len() == b.points().len()
        && a.points().iter().zip(b.points()).all(|(p, q)| {
            p.frequency.to_bits() == q.frequency.to_bits()
                && p.s_matrix
                    .to_row_major()
                    .iter()
                    .zip(q.s_matrix.to_row_major())
                    .all(|(x, y)| {
                        x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits()
                    })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ri_round_trip_is_bit_exact(
        d in (1usize..=5).prop_flat_map(|n| scattering(n, false)),
        unit in unit()
    ) {
        let opts = TouchstoneOptions::for_data(&d, unit, DataFormat::RI);
        let text = write_touchstone(&d, &opts);
        let back = parse_touchstone(&text).unwrap();
        prop_assert!(bit_identical(&d, &back), "{text}");
    }

    #[test]
    fn formats_agree(d in (1usize..=4).prop_flat_map(|n| scattering(n, true))) {
        let parsed: Vec<ScatteringData> = [DataFormat::RI, DataFormat::MA, DataFormat::DB]
            .into_iter()
            .map(|f| parse_touchstone(&write_touchstone(&d, &TouchstoneOptions::for_data(&d, FrequencyUnit::GHz, f))).unwrap())
            .collect();
        for other in &parsed[1..] {
            for (p, q) in parsed[0].points().iter().zip(other.points()) {
                prop_assert_eq!(p.frequency, q.frequency);
                for (x, y) in p.s_matrix.to_row_major().iter().zip(q.s_matrix.to_row_major()) {
                    prop_assert!((x - y).norm() <= 1e-12, "{x} vs {y}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn parser_never_panics_on_bytes(bytes in prop::collection::vec(any::<u8>(), 0..512)) {
        let _ = parse_touchstone_bytes(&bytes);
    }

    #[test]
    fn parser_never_panics_on_plausible_text(
        lines in prop::collection::vec(
            prop_oneof![
                Just("# GHz S RI R 50".to_string()),
                Just("# MHz S DB R 1e400".to_string()),
                Just("[Version] 2.0".to_string()),
                Just("! note".to_string()),
                "[-+0-9.eE ]{0,40}",
                "[#!A-Za-z0-9. ]{0,30}",
            ],
            0..12,
        )
    ) {
        let _ = parse_touchstone(&lines.join("\n"));
    }
}
