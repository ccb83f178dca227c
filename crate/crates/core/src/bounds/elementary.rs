//! Rigorous enclosures of `pi`, `exp`, `log` and `arctanh`.
//!
//! Every function sums a series in interval arithmetic (each partial term
//! is an interval that contains the true term) and then adds an explicit
//! bound on the tail, so containment does not depend on the rounding
//! behaviour of any floating-point unit. Results are rounded outward to the
//! requested number of bits.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::interval::{floor_log2, pow2, Interval};
use super::BoundsError;
use crate::rational::BigRational;

/// Extra bits carried through intermediate sums.
const GUARD_BITS: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Elementary {
    Pi,
    Exp,
    Log,
    Arctanh,
}

pub fn enclose_elementary(
    kind: Elementary,
    x: &Interval,
    bits: u32,
) -> Result<Interval, BoundsError> {
    match kind {
        Elementary::Pi => Ok(pi(bits)),
        Elementary::Exp => Ok(exp(x, bits)),
        Elementary::Log => log(x, bits),
        Elementary::Arctanh => arctanh(x, bits),
    }
}

fn small(bits: u32) -> BigRational {
    pow2(-(bits as i64))
}

/// `sum_{i>=0} s^i y^(2i+1) / (2i+1)` with `s = -1` (arctan) or `s = 1`
/// (arctanh), for `|y| <= 1/2`. The tail after the last summed term is at
/// most `|y|^(2N+3) / (1 - y^2) <= (4/3) |y|^(2N+3)`.
fn odd_series(y: &BigRational, alternating: bool, work: u32) -> Interval {
    debug_assert!(y.abs() <= BigRational::new(1.into(), 2.into()));
    if y.is_zero() {
        return Interval::point(BigRational::zero());
    }
    let eps = small(work);
    let y2 = Interval::point(y * y);
    let mut power = Interval::point(y.clone());
    let mut sum = Interval::point(BigRational::zero());
    let mut i: i64 = 0;
    loop {
        let term = power.scale(&BigRational::new(1.into(), (2 * i + 1).into()));
        sum = if alternating && i % 2 == 1 {
            &sum - &term
        } else {
            &sum + &term
        }
        .round_out(work);
        power = (&power * &y2).round_out(work);
        i += 1;
        if power.abs_max() < eps {
            break;
        }
    }
    let tail = power.abs_max() * BigRational::new(4.into(), 3.into());
    &sum + &Interval::ball(&BigRational::zero(), &tail)
}

/// `pi = 16 arctan(1/5) - 4 arctan(1/239)`.
pub fn pi(bits: u32) -> Interval {
    let work = bits + GUARD_BITS;
    let a = odd_series(&BigRational::new(1.into(), 5.into()), true, work);
    let b = odd_series(&BigRational::new(1.into(), 239.into()), true, work);
    (a.scale(&BigRational::from_integer(16.into())) - b.scale(&BigRational::from_integer(4.into())))
        .round_out(bits)
}

fn ln2(work: u32) -> Interval {
    odd_series(&BigRational::new(1.into(), 3.into()), false, work)
        .scale(&BigRational::from_integer(2.into()))
}

fn exp_point(x: &BigRational, bits: u32) -> Interval {
    if x.is_zero() {
        return Interval::from_integer(1);
    }
    // halve until |x / 2^s| < 1/2, then square s times
    let s = (floor_log2(x) + 2).max(0) as u32;
    let work = bits + GUARD_BITS + s;
    let z = x * pow2(-(s as i64));
    let zi = Interval::point(z.clone());
    let eps = small(work);
    let mut term = Interval::from_integer(1);
    let mut sum = Interval::from_integer(1);
    let mut k: i64 = 1;
    loop {
        term = (&term * &zi)
            .scale(&BigRational::new(1.into(), k.into()))
            .round_out(work);
        sum = (&sum + &term).round_out(work);
        k += 1;
        if term.abs_max() < eps {
            break;
        }
    }
    // next term ratio is |z|/(k) < 1/2, so the tail is below twice the
    // first omitted term
    let next = term.abs_max() * z.abs() / BigRational::from_integer(k.into());
    let mut value = &sum
        + &Interval::ball(
            &BigRational::zero(),
            &(next * BigRational::from_integer(2.into())),
        );
    for _ in 0..s {
        value = value.square().round_out(work);
    }
    value.round_out(bits)
}

pub fn exp(x: &Interval, bits: u32) -> Interval {
    if x.is_point() {
        return exp_point(x.lo(), bits);
    }
    let lo = exp_point(x.lo(), bits);
    let hi = exp_point(x.hi(), bits);
    Interval::new(lo.lo().clone(), hi.hi().clone()).expect("exp is increasing")
}

fn log_point(x: &BigRational, bits: u32) -> Interval {
    debug_assert!(x.is_positive());
    if x.is_one() {
        return Interval::from_integer(0);
    }
    let work = bits + GUARD_BITS;
    // x = 2^k m with m in [2/3, 4/3)
    let mut k = floor_log2(x);
    let mut m = x * pow2(-k);
    if m >= BigRational::new(4.into(), 3.into()) {
        m /= BigRational::from_integer(2.into());
        k += 1;
    }
    let one = BigRational::one();
    let y = (&m - &one) / (&m + &one);
    let atanh = odd_series(&y, false, work).scale(&BigRational::from_integer(2.into()));
    let value = if k == 0 {
        atanh
    } else {
        &ln2(work + 8).scale(&BigRational::from_integer(k.into())) + &atanh
    };
    value.round_out(bits)
}

pub fn log(x: &Interval, bits: u32) -> Result<Interval, BoundsError> {
    if !x.is_positive() {
        return Err(BoundsError::Domain(format!(
            "log needs a positive argument, got {x}"
        )));
    }
    if x.is_point() {
        return Ok(log_point(x.lo(), bits));
    }
    let lo = log_point(x.lo(), bits);
    let hi = log_point(x.hi(), bits);
    Ok(Interval::new(lo.lo().clone(), hi.hi().clone()).expect("log is increasing"))
}

/// `arctanh r = (1/2) log((1 + r) / (1 - r))`.
fn arctanh_point(r: &BigRational, bits: u32) -> Interval {
    if r.is_zero() {
        return Interval::from_integer(0);
    }
    let one = BigRational::one();
    let ratio = (&one + r) / (&one - r);
    log_point(&ratio, bits + 1)
        .scale(&BigRational::new(1.into(), 2.into()))
        .round_out(bits)
}

pub fn arctanh(x: &Interval, bits: u32) -> Result<Interval, BoundsError> {
    let one = BigRational::one();
    if x.lo() <= &-&one || x.hi() >= &one {
        return Err(BoundsError::Domain(format!(
            "arctanh needs an argument inside (-1, 1), got {x}"
        )));
    }
    if x.is_point() {
        return Ok(arctanh_point(x.lo(), bits));
    }
    let lo = arctanh_point(x.lo(), bits);
    let hi = arctanh_point(x.hi(), bits);
    Ok(Interval::new(lo.lo().clone(), hi.hi().clone()).expect("arctanh is increasing"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rational_from_i64 as r;

    #[test]
    fn pi_contains_known_digits() {
        let p = pi(64);
        assert!(p.to_decimal_pair(14).0.starts_with("3.14159265358979"));
        assert!(p.width() < pow2(-60));
        // 3.14159265358979323846264338327950288 truncated/rounded at 30 digits
        let lo = crate::rational::parse_rational(
            "314159265358979323846264338327/100000000000000000000000000000",
        )
        .unwrap();
        let hi = crate::rational::parse_rational(
            "314159265358979323846264338328/100000000000000000000000000000",
        )
        .unwrap();
        let p = pi(128);
        assert!(p.lo() > &lo && p.hi() < &hi);
    }

    #[test]
    fn exp_log_against_std() {
        for &(p, q) in &[(1, 1), (-3, 7), (5, 2), (1, 1000), (-40, 3)] {
            let x = r(p, q);
            let f = p as f64 / q as f64;
            let e = exp(&Interval::point(x.clone()), 80);
            assert!((e.lo_f64() - f.exp()).abs() <= 4.0 * f64::EPSILON * f.exp());
            assert!(e.width() <= e.hi().abs() * pow2(-75));
        }
        for &(p, q) in &[(1, 3), (39, 5), (7, 1), (1, 1000), (1000, 1)] {
            let x = r(p, q);
            let f = (p as f64 / q as f64).ln();
            let l = log(&Interval::point(x), 80).unwrap();
            assert!((l.lo_f64() - f).abs() <= 4.0 * f64::EPSILON * f.abs().max(1.0));
        }
    }

    #[test]
    fn arctanh_identity_example() {
        // arctanh(17/22) = (1/2) log(39/5)
        let a = arctanh(&Interval::from_ratio(17, 22), 128).unwrap();
        let half_log = log(&Interval::from_ratio(39, 5), 128)
            .unwrap()
            .scale(&r(1, 2));
        assert!(a.overlaps(&half_log));
        assert!(
            a.contains_f64((17.0f64 / 22.0).atanh())
                || (a.lo_f64() - (17.0f64 / 22.0).atanh()).abs() < 1e-15
        );
        assert_eq!(
            arctanh(&Interval::from_integer(0), 64).unwrap(),
            Interval::from_integer(0)
        );
    }

    #[test]
    fn domain_errors() {
        assert!(log(&Interval::from_integer(0), 64).is_err());
        assert!(log(&Interval::new(r(-1, 1), r(1, 1)).unwrap(), 64).is_err());
        assert!(arctanh(&Interval::from_integer(1), 64).is_err());
        assert!(arctanh(&Interval::new(r(0, 1), r(1, 1)).unwrap(), 64).is_err());
    }

    #[test]
    fn interval_arguments_are_monotone_hulls() {
        let x = Interval::new(r(1, 4), r(1, 2)).unwrap();
        let e = exp(&x, 64);
        assert!(e.lo_f64() <= 0.25f64.exp() && e.hi_f64() >= 0.5f64.exp());
        let t = arctanh(&x, 64).unwrap();
        assert!(t.lo_f64() <= 0.25f64.atanh() && t.hi_f64() >= 0.5f64.atanh());
    }

    #[test]
    fn width_shrinks_with_precision() {
        let x = Interval::from_ratio(5, 7);
        let w64 = exp(&x, 64).width();
        let w256 = exp(&x, 256).width();
        assert!(w256 < w64);
        let w64 = arctanh(&x, 64).unwrap().width();
        let w256 = arctanh(&x, 256).unwrap().width();
        assert!(w256 < w64);
    }
}
