//! Exhaustive checks of the exact evaluators against each other and against
//! brute-force enumeration at small sizes.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use parkstat::enumerate::EnumCaps;
use parkstat::exactprob::{
    last_pref_distribution_bruteforce, park_probability, total_pf_mass, total_pf_mass_with, vacancy_polynomials,
    vacancy_table, vacancy_table_with,
};
use parkstat::formulas::{
    convexity_decompose, last_pref_distribution, last_pref_distribution_half, poisson_cdf_check,
};
use parkstat::lucky::{
    a220884_rows, unlucky_distribution_bruteforce, unlucky_expected_linear_row, unlucky_one_way_bruteforce,
    weighted_pascal, weighted_pascal_weights,
};
use parkstat::poly::PolyP;
use parkstat::protocol::PreferenceVector;
use parkstat::rational::{int, ratio};
use parkstat::Error;

fn all_vectors(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..=base).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

fn constant(v: u64) -> PolyP {
    PolyP::from_int(v as i64)
}

#[test]
fn reflection_holds_exhaustively() {
    for n in 1..=5 {
        for prefs in all_vectors(n, n) {
            let alpha = PreferenceVector::linear(prefs, n).unwrap();
            let f = park_probability(&alpha).unwrap();
            assert_eq!(f.reflect(), park_probability(&alpha.mirrored()).unwrap(), "{:?}", alpha.prefs());
            assert!(f.degree().unwrap_or(0) <= n);
        }
    }
}

#[test]
fn permutations_change_the_probability() {
    let a = park_probability(&PreferenceVector::linear(vec![1, 2, 2], 3).unwrap()).unwrap();
    let b = park_probability(&PreferenceVector::linear(vec![2, 2, 1], 3).unwrap()).unwrap();
    assert_eq!(a, PolyP::p());
    assert_ne!(a, b);
}

#[test]
fn total_mass_examples() {
    assert_eq!(total_pf_mass(3, 3).unwrap(), constant(16));
    assert_eq!(total_pf_mass(2, 1).unwrap(), constant(2));
    assert_eq!(total_pf_mass(4, 2).unwrap(), constant(15));
    assert!(matches!(total_pf_mass(3, 4), Err(Error::InvalidArgument(_))));
    let tight = EnumCaps::default().with_vector_cap(26);
    assert!(matches!(total_pf_mass_with(3, 3, &tight), Err(Error::SizeLimit { size: 27, .. })));
}

#[test]
fn conditional_law_of_three_cars() {
    let oracle = last_pref_distribution_bruteforce(3).unwrap();
    assert_eq!(oracle.ratio(2, &ratio(1, 2)), ratio(10, 32));
    assert_eq!(oracle.denominator, constant(16));
    let sum: BigRational = (1..=3).map(|j| oracle.ratio(j, &ratio(2, 7))).sum();
    assert!(sum.is_one());
    let one = last_pref_distribution_bruteforce(1).unwrap();
    assert!(one.ratio(1, &ratio(1, 3)).is_one());
}

/// A vector on the circle with `n + 1` spots leaves spot `n + 1` empty with
/// exactly the probability that it parks on the linear street with `n` spots.
#[test]
fn empty_last_spot_on_the_circle_is_parking_on_the_line() {
    for n in 1..=4 {
        for prefs in all_vectors(n + 1, n) {
            let circ = PreferenceVector::circular(prefs.clone(), n + 1).unwrap();
            let last = vacancy_polynomials(&circ).unwrap()[n].clone();
            if prefs.iter().all(|&a| a <= n) {
                let line = PreferenceVector::linear(prefs.clone(), n).unwrap();
                assert_eq!(last, park_probability(&line).unwrap(), "{prefs:?}");
            } else {
                assert!(last.is_zero(), "{prefs:?}");
            }
        }
    }
}

#[test]
fn vacancy_table_invariants() {
    for n in 1..=4 {
        let t = vacancy_table(n).unwrap();
        let total = constant(BigUint::from(n + 1).pow(n as u32 - 1).try_into().unwrap());
        assert!(t.is_circulant());
        for a in 1..=n + 1 {
            assert!(t.entry(a, a).is_zero());
            assert_eq!(t.row_sum(a), total);
            assert_eq!(t.col_sum(a), total);
        }
    }
    assert_eq!(vacancy_table(2).unwrap().row_sum(1), constant(3));
    assert_eq!(vacancy_table(3).unwrap().col_sum(4), constant(16));
    let tight = EnumCaps::default().with_vector_cap(63);
    assert!(matches!(vacancy_table_with(3, &tight), Err(Error::SizeLimit { .. })));
}

#[test]
fn closed_forms_agree() {
    for n in 1..=60 {
        assert_eq!(last_pref_distribution_half(n).unwrap(), last_pref_distribution(n, &ratio(1, 2)).unwrap());
    }
    for n in 1..=50 {
        let c = convexity_decompose(n, &ratio(1, 2)).unwrap();
        let avg = c.forward.mix(&c.backward, &ratio(1, 2)).unwrap();
        assert_eq!(c.mixed, avg);
        assert_eq!(c.forward.reversed(), c.backward);
    }
    // n = 2 at p = 1/2: 1/3 + 2/6 and 1/3 + 1/6
    let two = last_pref_distribution_half(2).unwrap();
    assert_eq!(two.masses(), &[ratio(1, 2), ratio(1, 2)]);
}

#[test]
fn unlucky_counts_do_not_depend_on_p() {
    for n in 1..=4 {
        let e = weighted_pascal(n).unwrap();
        for i in 1..=n {
            let free = unlucky_distribution_bruteforce(n, i, false).unwrap();
            for (k, poly) in free {
                let want = BigRational::from_integer((e.row(i)[k].clone() * BigUint::from(n + 1)).into());
                assert_eq!(poly, PolyP::constant(want), "n={n} i={i} k={k}");
            }
        }
    }
}

#[test]
fn one_way_counts_match_enumeration() {
    for n in 1..=6 {
        let got: Vec<PolyP> = unlucky_one_way_bruteforce(n).unwrap().into_values().collect();
        let want: Vec<PolyP> = unlucky_expected_linear_row(n)
            .unwrap()
            .into_iter()
            .map(|v| PolyP::constant(BigRational::from_integer(v.into())))
            .collect();
        assert_eq!(got, want, "n={n}");
    }
}

#[test]
fn triangle_row_sums() {
    for n in 1..=8 {
        let e = weighted_pascal(n).unwrap();
        for i in 1..=n {
            assert_eq!(e.row_sum(i), BigUint::from(n + 1).pow(i as u32 - 1));
        }
    }
    let a = a220884_rows(9);
    for i in 1..=9 {
        assert_eq!(a.row_sum(i), BigUint::from(i + 1).pow(i as u32 - 1));
    }
}

/// The two weights are both 1 only at `n = 1, i = 2`, outside the table, so
/// the weighted recurrence never coincides with Pascal's inside it.
#[test]
fn weighted_recurrence_never_has_unit_weights() {
    for n in 1..=30 {
        for i in 2..=n {
            let (a, b) = weighted_pascal_weights(n, i);
            assert!(!(a.is_one() && b.is_one()), "n={n} i={i}");
        }
    }
    let (a, b) = weighted_pascal_weights(3, 2);
    assert_eq!((a, b), (BigUint::from(3u32), BigUint::from(1u32)));
}

#[test]
fn poisson_edgeworth_residual_shrinks() {
    let mut scaled = Vec::new();
    for n in [100u64, 1000, 10_000] {
        let c = poisson_cdf_check(n).unwrap();
        assert!(c.exact > int(0) && c.exact < int(1));
        scaled.push(c.residual.abs() * (n as f64).sqrt());
    }
    assert!(scaled[0] > scaled[1] && scaled[1] > scaled[2], "{scaled:?}");
}
