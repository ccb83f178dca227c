use proptest::prelude::*;
use univalence::bounds::{
    arctanh, check_lower_bound, exp, g_function, h_function, lemma_tech_check, log, phi_enclose,
    pi, solve_threshold, BoundStatus, Interval, Mode, PiMultiple,
};
use univalence::rational::{rational_from_i64 as r, BigRational};

const BITS: u32 = 64;

fn c_of(q: BigRational, mode: Mode, bits: u32) -> Interval {
    mode.c_for_delta(&PiMultiple(q).enclose(bits + 16), bits)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn enclosures_contain_sharper_ones(p in -4000i64..4000, q in 1i64..400) {
        let x = Interval::point(r(p, q));
        let hi_bits = 4 * BITS;
        // exp on |x| <= 40
        if p.abs() <= 40 * q {
            prop_assert!(exp(&x, BITS).encloses(&exp(&x, hi_bits)));
        }
        if p > 0 {
            prop_assert!(log(&x, BITS).unwrap().encloses(&log(&x, hi_bits).unwrap()));
        }
        if p.abs() < q {
            prop_assert!(arctanh(&x, BITS).unwrap().encloses(&arctanh(&x, hi_bits).unwrap()));
        }
    }
}

#[test]
fn pi_enclosures_nest() {
    for bits in [64, 96, 128, 256] {
        assert!(pi(bits).encloses(&pi(4 * bits)));
    }
}

#[test]
fn certified_stays_certified_with_more_bits() {
    let cases = [
        (r(1, 3), Mode::Delta0, r(17, 22)),
        (r(7, 25), Mode::Delta1, r(20, 27)),
        (r(22, 65), Mode::Delta0, r(17, 22)),
        (r(127, 452), Mode::Delta1, r(321, 433)),
    ];
    for (q, mode, x1) in cases {
        let mut previous: Option<Interval> = None;
        for bits in [64, 128, 256, 512] {
            let rep = check_lower_bound(&q, mode, Some(&x1), bits).unwrap();
            assert_eq!(rep.status, BoundStatus::Certified, "{q} {mode} at {bits}");
            if let Some(prev) = &previous {
                assert!(prev.overlaps(&rep.threshold));
            }
            previous = Some(rep.threshold);
        }
    }
}

#[test]
fn phi_sandwich_and_main_chains() {
    let tol = r(1, 1_000_000_000);
    for (p, q) in [(11, 10), (3, 2), (2, 1), (5, 1), (40, 1)] {
        let c = Interval::from_ratio(p, q);
        let phi = phi_enclose(&c, &tol, 128).unwrap();
        let g = g_function(&phi.sample, &c, 128).unwrap();
        let h = h_function(&phi.x1, &c).unwrap();
        assert!(g.lo() <= h.hi());
        assert!(lemma_tech_check(&c, &phi.x1, 128).unwrap().is_positive());
        assert!(phi.value.width() <= tol);
    }

    let one = Interval::from_integer(1);
    let phi0 = phi_enclose(&c_of(r(1, 3), Mode::Delta0, 128), &tol, 128).unwrap();
    assert!(phi0.value.scale(&r(2, 3)).certainly_lt(&one));
    let phi1 = phi_enclose(&c_of(r(7, 25), Mode::Delta1, 128), &tol, 128).unwrap();
    assert!(phi1.value.scale(&r(14, 25)).certainly_lt(&one));
}

#[test]
fn h_decreases_towards_the_maximiser() {
    let c = c_of(r(1, 3), Mode::Delta0, 128);
    let x1s = [r(1, 2), r(3, 5), r(7, 10), r(3, 4), r(17, 22)];
    let mut last: Option<Interval> = None;
    for x in &x1s {
        assert!(lemma_tech_check(&c, x, 128).unwrap().is_positive());
        let h = h_function(x, &c).unwrap();
        if let Some(prev) = &last {
            let slack = prev.width() + h.width();
            assert!(h.hi() <= &(prev.hi() + slack));
        }
        last = Some(h);
    }
}

#[test]
fn phi_over_c_is_non_increasing() {
    let tol = r(1, 1_000_000_000_000);
    let grid = [(11, 10), (6, 5), (3, 2), (2, 1), (3, 1), (5, 1), (10, 1)];
    let ratios: Vec<Interval> = grid
        .iter()
        .map(|&(p, q)| {
            let c = Interval::from_ratio(p, q);
            phi_enclose(&c, &tol, 128).unwrap().value.scale(&r(q, p))
        })
        .collect();
    for w in ratios.windows(2) {
        assert!(!w[0].certainly_lt(&w[1]));
    }
}

#[test]
fn refuted_and_auto_selected() {
    let rep = check_lower_bound(&r(5, 7), Mode::Delta0, Some(&r(17, 22)), 128).unwrap();
    assert_eq!(rep.status, BoundStatus::Refuted);
    assert!(!rep.certified);
    let auto = check_lower_bound(&r(1, 3), Mode::Delta0, None, 128).unwrap();
    assert!(auto.certified);
}

#[test]
fn coarse_bracket_contains_fine_bracket() {
    let coarse = solve_threshold(Mode::Delta0, &r(1, 10), 128)
        .unwrap()
        .bracket;
    let fine = solve_threshold(Mode::Delta0, &r(1, 1000), 128)
        .unwrap()
        .bracket;
    assert!(coarse.encloses(&fine));
    let lower = pi(128).scale(&r(1, 3));
    let upper = pi(128).scale(&r(5, 7));
    assert!(lower.certainly_lt(&Interval::point(coarse.lo().clone())));
    assert!(Interval::point(coarse.hi().clone()).certainly_lt(&upper));
}
