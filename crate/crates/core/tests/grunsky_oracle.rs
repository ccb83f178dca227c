//! The Grunsky table from the column recursion against the bivariate
//! logarithm.

#[path = "support/oracle.rs"]
mod oracle;

use num_traits::Zero;
use oracle::bivariate_oracle;
use proptest::prelude::*;
use univalence::grunsky::GrunskyTable;
use univalence::rational::{rational_from_i64 as r, BigRational};
use univalence::ratseries::{f_a_series, koebe_series, PowerSeries};

fn assert_matches_oracle(f: &PowerSeries, depth: usize) {
    let table = GrunskyTable::new(f, depth).unwrap();
    let oracle = bivariate_oracle(f, depth);
    for (j, row) in oracle.iter().enumerate() {
        for (k, want) in row.iter().enumerate() {
            assert_eq!(
                table.get(j, k).unwrap(),
                want,
                "c_{{{j},{k}}} depth {depth}"
            );
        }
    }
}

#[test]
fn koebe_matches_oracle() {
    for depth in 1..=6 {
        assert_matches_oracle(&koebe_series(depth + 1), depth);
    }
}

#[test]
fn f_half_matches_oracle() {
    for depth in 1..=6 {
        assert_matches_oracle(&f_a_series(&r(1, 2), depth + 1), depth);
    }
}

#[test]
fn f_five_sevenths_matches_oracle() {
    for depth in 1..=6 {
        assert_matches_oracle(&f_a_series(&r(5, 7), depth + 1), depth);
    }
}

#[test]
fn oracle_reproduces_koebe_closed_form() {
    // c_{j,k} = delta_{jk}/j for j,k >= 1, c_{j,0} = -2/j
    let c = bivariate_oracle(&koebe_series(7), 6);
    for j in 1..=3 {
        assert_eq!(c[j][0], r(-2, j as i64));
        for k in 1..=3 {
            let want = if j == k {
                r(1, j as i64)
            } else {
                BigRational::zero()
            };
            assert_eq!(c[j][k], want);
        }
    }
}

fn normalized_series(max_depth: usize) -> impl Strategy<Value = (PowerSeries, usize)> {
    (1..=max_depth).prop_flat_map(|depth| {
        prop::collection::vec((-9i64..=9, 1i64..=9), depth).prop_map(move |tail| {
            let mut coeffs = vec![r(0, 1), r(1, 1)];
            coeffs.extend(tail.iter().map(|&(p, q)| r(p, q)));
            (PowerSeries::new(coeffs).unwrap(), depth)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_functions_match_oracle((f, depth) in normalized_series(6)) {
        let table = GrunskyTable::new(&f, depth).unwrap();
        let oracle = bivariate_oracle(&f, depth);
        for (j, row) in oracle.iter().enumerate() {
            for (k, want) in row.iter().enumerate() {
                prop_assert_eq!(table.get(j, k).unwrap(), want);
            }
        }
    }
}
