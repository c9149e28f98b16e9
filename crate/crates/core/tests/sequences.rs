mod support;

use std::sync::Arc;

use proptest::prelude::*;

use lsmc_stability::sequences::{
    empirical_c, generate, radical_inverse, star_discrepancy, star_discrepancy_1d,
    star_discrepancy_nd_bruteforce, DirectionTable, GeneratorSpec, PointSet,
};
use lsmc_stability::Error;

// reference values from an independent Sobol implementation using the same
// direction numbers, unscrambled
const SOBOL_ROW_2: [f64; 16] = [
    0.75, 0.25, 0.25, 0.25, 0.75, 0.75, 0.25, 0.75, 0.75, 0.75, 0.75, 0.75, 0.25, 0.25, 0.75, 0.25,
];
const SOBOL_ROW_4: [f64; 16] = [
    0.375, 0.375, 0.625, 0.875, 0.375, 0.125, 0.375, 0.875, 0.875, 0.625, 0.875, 0.375, 0.375,
    0.625, 0.375, 0.875,
];
const SOBOL_ROW_1000: [f64; 16] = [
    0.2197265625, 0.0966796875, 0.5185546875, 0.6767578125, 0.2802734375, 0.9072265625,
    0.0458984375, 0.8994140625, 0.5009765625, 0.0693359375, 0.0849609375, 0.2548828125,
    0.1611328125, 0.3837890625, 0.1435546875, 0.3701171875,
];

#[test]
fn sobol_matches_reference_rows() {
    let ps = generate(&GeneratorSpec::sobol(16), 1001).unwrap();
    assert!(ps.point(0).iter().all(|&x| x == 0.0));
    assert!(ps.point(1).iter().all(|&x| x == 0.5));
    assert_eq!(ps.point(2), SOBOL_ROW_2);
    assert_eq!(ps.point(4), SOBOL_ROW_4);
    assert_eq!(ps.point(1000), SOBOL_ROW_1000);
}

#[test]
fn sobol_is_a_permutation_of_dyadic_grid() {
    // every 2^k-point prefix of each coordinate hits each dyadic cell once
    let ps = generate(&GeneratorSpec::sobol(8), 256).unwrap();
    for axis in 0..8 {
        let mut cells: Vec<u32> = ps.axis(axis).iter().map(|x| (x * 256.0) as u32).collect();
        cells.sort_unstable();
        assert_eq!(cells, (0..256).collect::<Vec<_>>(), "axis {axis}");
    }
}

#[test]
fn sobol_skip_matches_offset() {
    let full = generate(&GeneratorSpec::sobol(3), 40).unwrap();
    let tail = generate(&GeneratorSpec::sobol(3).with_skip(25), 15).unwrap();
    for i in 0..15 {
        assert_eq!(tail.point(i), full.point(25 + i));
    }
}

#[test]
fn direction_file_round_trip() {
    let text = "d s a m_i\n2 1 0 1\n3 2 1 1 3\n";
    let path = std::env::temp_dir().join(format!("dirs-{}.txt", std::process::id()));
    std::fs::write(&path, text).unwrap();
    let table = DirectionTable::from_file(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(table.max_dimension(), 3);
    let from_file = generate(&GeneratorSpec::sobol_with_table(3, Arc::new(table)), 64).unwrap();
    let embedded = generate(&GeneratorSpec::sobol(3), 64).unwrap();
    for i in 0..64 {
        assert_eq!(from_file.point(i), embedded.point(i));
    }
    let small = Arc::new(DirectionTable::parse(text).unwrap());
    assert!(matches!(
        generate(&GeneratorSpec::sobol_with_table(4, small), 4),
        Err(Error::SobolDimension { .. })
    ));
}

#[test]
fn malformed_direction_numbers_rejected() {
    // m_k must be odd and below 2^k
    assert!(DirectionTable::parse("2 1 0 2\n").is_err());
    assert!(DirectionTable::parse("2 2 1 1 5\n").is_err());
    // dimensions must start at 2 and be consecutive
    assert!(DirectionTable::parse("3 1 0 1\n").is_err());
}

#[test]
fn vdc_dyadic_discrepancy() {
    let all = generate(&GeneratorSpec::van_der_corput(2), 1 << 10).unwrap();
    for k in 1..=10 {
        assert_eq!(star_discrepancy_1d(&all.prefix(1 << k)).unwrap().d_star, (-(k as f64)).exp2());
    }
}

#[test]
fn two_point_brute_force() {
    let ps = PointSet::from_points(2, &[vec![0.0, 0.0], vec![0.5, 0.5]]).unwrap();
    let d = star_discrepancy_nd_bruteforce(&ps).unwrap().d_star;
    // closed [0,.5]^2 holds both points: 1 - 1/4
    assert_eq!(d, 0.75);
}

#[test]
fn empirical_c_orders_generators() {
    let grid: Vec<usize> = (3..=512).collect();
    let vdc = empirical_c(&GeneratorSpec::van_der_corput(2), &grid).unwrap();
    let random = empirical_c(&GeneratorSpec::pseudo_random(1, 3), &grid).unwrap();
    assert!(vdc < random, "vdC {vdc} vs random {random}");
    let powers: Vec<usize> = (2..=12).map(|k| 1usize << k).collect();
    let c = empirical_c(&GeneratorSpec::van_der_corput(2), &powers).unwrap();
    assert!((c - 1.0 / 4f64.ln()).abs() < 1e-15);
}

#[test]
fn oracle_limit_enforced() {
    let ps = generate(&GeneratorSpec::halton(vec![2, 3]), 300).unwrap();
    assert!(matches!(star_discrepancy(&ps), Err(Error::OracleLimit { .. })));
}

proptest! {
    #[test]
    fn radical_inverse_in_unit_interval(n in any::<u64>(), base in 2u64..1000) {
        let v = radical_inverse(n, base).unwrap();
        prop_assert!((0.0..1.0).contains(&v));
    }

    #[test]
    fn discrepancy_ignores_order(
        xs in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 1..24),
        rot in 0usize..24,
    ) {
        let pts: Vec<Vec<f64>> = xs.iter().map(|&(a, b)| vec![a, b]).collect();
        let mut shuffled = pts.clone();
        shuffled.reverse();
        let k = rot % shuffled.len();
        shuffled.rotate_left(k);
        let a = star_discrepancy(&PointSet::from_points(2, &pts).unwrap()).unwrap().d_star;
        let b = star_discrepancy(&PointSet::from_points(2, &shuffled).unwrap()).unwrap().d_star;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn discrepancy_bounds(xs in prop::collection::vec(0.0f64..1.0, 1..64)) {
        let n = xs.len() as f64;
        let d = star_discrepancy_1d(&PointSet::from_1d(&xs).unwrap()).unwrap().d_star;
        prop_assert!(d >= 1.0 / (2.0 * n) - 1e-15 && d <= 1.0);
    }

    #[test]
    fn generation_is_deterministic(seed in any::<u64>(), skip in 0u64..1000, s in 1usize..5) {
        let specs = [
            GeneratorSpec::pseudo_random(s, seed).with_skip(skip),
            GeneratorSpec::sobol(s).with_skip(skip),
            GeneratorSpec::halton(vec![2, 3, 5, 7][..s].to_vec()).with_skip(skip),
        ];
        for spec in &specs {
            prop_assert_eq!(generate(spec, 17).unwrap(), generate(spec, 17).unwrap());
        }
    }

    #[test]
    fn prefixes_agree(base in 2u64..20, n in 1usize..200) {
        let spec = GeneratorSpec::van_der_corput(base);
        let long = generate(&spec, 200).unwrap();
        prop_assert_eq!(long.prefix(n).axis(0), generate(&spec, n).unwrap().axis(0));
    }
}
