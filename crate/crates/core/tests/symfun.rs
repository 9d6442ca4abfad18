use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use sigmalaw_core::symfun::power_transform_in;
use sigmalaw_core::{elementary_from_roots, power_transform, truncate_epoly, EPoly};

type Q = BigRational;

fn rat(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

fn pairs(max: u32) -> Vec<(u32, u32)> {
    (1..=max)
        .flat_map(|i| (1..=max).map(move |j| (i, j)))
        .filter(|(i, j)| i * j <= max)
        .collect()
}

#[test]
fn first_row_is_elementary() {
    for i in 1..=8u32 {
        assert_eq!(*power_transform(i, 1).unwrap(), EPoly::elementary(i as usize));
    }
}

#[test]
fn weighted_homogeneity() {
    for (i, j) in pairs(12) {
        assert!(power_transform(i, j).unwrap().is_homogeneous(i * j), "P_{{{i},{j}}}");
    }
}

#[test]
fn stable_in_the_number_of_variables() {
    for (i, j) in pairs(8) {
        let n = (i * j) as usize;
        assert_eq!(
            power_transform_in(i, j, n),
            power_transform_in(i, j, n + 2),
            "P_{{{i},{j}}}"
        );
    }
}

#[test]
fn truncation_matches_fewer_variables() {
    for (i, j) in pairs(8) {
        let full = power_transform(i, j).unwrap();
        for n in 1..(i * j) as usize {
            assert_eq!(
                truncate_epoly(&full, n),
                power_transform_in(i, j, n),
                "P_{{{i},{j}}} at {n}"
            );
        }
    }
}

#[test]
fn cap_is_reported() {
    let err = power_transform(5, 5).unwrap_err();
    assert!(err.is_resource_cap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigenvalue_oracle(idx in 0usize..20, roots in prop::collection::vec(-6i64..=6, 8)) {
        let (i, j) = pairs(8)[idx];
        let len = (i * j) as usize;
        let roots: Vec<Q> = roots[..len].iter().map(|&x| rat(x)).collect();
        let e = elementary_from_roots(&roots);
        let powered: Vec<Q> = roots.iter().map(|x| (0..j).fold(Q::one(), |a, _| a * x)).collect();
        let direct = elementary_from_roots(&powered)[i as usize - 1].clone();
        prop_assert_eq!(power_transform(i, j).unwrap().eval(&e), direct);
    }

    #[test]
    fn eigenvalue_oracle_with_fewer_roots(idx in 0usize..20, roots in prop::collection::vec(-6i64..=6, 1..6)) {
        let (i, j) = pairs(8)[idx];
        let n = roots.len();
        let roots: Vec<Q> = roots.iter().map(|&x| rat(x)).collect();
        let e = elementary_from_roots(&roots);
        let powered: Vec<Q> = roots.iter().map(|x| (0..j).fold(Q::one(), |a, _| a * x)).collect();
        let direct = if i as usize <= n { elementary_from_roots(&powered)[i as usize - 1].clone() } else { rat(0) };
        prop_assert_eq!(truncate_epoly(&power_transform(i, j).unwrap(), n).eval(&e), direct);
    }
}
