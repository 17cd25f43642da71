//! Property suites: factorization round trip, Kronecker symbol against Euler's criterion,
//! torsion order dividing reduction counts, and the shape of torsion over real fields.

mod common;

use common::*;
use cmtorsion::arith::int::kronecker;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn factorization_round_trip(parts in product_strategy()) {
        factor_round_trip_case(&parts)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn kronecker_matches_euler((a, p) in euler_strategy()) {
        kronecker_euler_case(a, p)?;
    }

    #[test]
    fn kronecker_is_multiplicative_in_top(a in -500i64..500, b in -500i64..500, n in 1i64..5000) {
        let ab = kronecker(a * b, n).unwrap();
        prop_assert_eq!(ab, kronecker(a, n).unwrap() * kronecker(b, n).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn torsion_divides_reduction_counts((a, b) in short_strategy()) {
        torsion_gcd_case(a, b)?;
    }

    #[test]
    fn real_fields_have_real_shape((b0, b1, c0, d) in real_kubert_strategy()) {
        real_shape_case(b0, b1, c0, d)?;
    }
}
