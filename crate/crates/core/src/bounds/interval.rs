//! Closed intervals with exact rational endpoints.
//!
//! Ring operations are exact. Precision enters only through
//! [`Interval::round_out`], which widens both endpoints to dyadic numbers
//! with a given number of significant bits (lower endpoint down, upper
//! endpoint up). Elementary functions round their results this way, which
//! keeps endpoint sizes bounded without giving up containment.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    Down,
    Up,
}

fn bit_length(n: &BigInt) -> i64 {
    n.bits() as i64
}

/// `floor(log2 |x|)` for nonzero `x`.
pub(crate) fn floor_log2(x: &BigRational) -> i64 {
    let n = x.numer().abs();
    let d = x.denom();
    let mut e = bit_length(&n) - bit_length(d);
    // 2^e <= |x| < 2^(e+1) after the correction below
    let two_e = pow2(e);
    if BigRational::new(n.clone(), d.clone()) < two_e {
        e -= 1;
    }
    e
}

pub(crate) fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << (e as usize))
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << ((-e) as usize))
    }
}

fn round_dyadic(x: &BigRational, bits: u32, dir: Direction) -> BigRational {
    if x.is_zero() {
        return x.clone();
    }
    // Keep `bits` significant bits: scale by 2^s so that |x| 2^s has about
    // `bits` integer bits, then floor or ceil.
    let s = bits as i64 - 1 - floor_log2(x);
    if s >= 0 && x.denom().is_one() {
        return x.clone();
    }
    let (numer, denom) = if s >= 0 {
        (x.numer() << (s as usize), x.denom().clone())
    } else {
        (x.numer().clone(), x.denom() << ((-s) as usize))
    };
    let (q, r) = numer.div_mod_floor(&denom);
    let m = match dir {
        Direction::Down => q,
        Direction::Up if r.is_zero() => q,
        Direction::Up => q + 1,
    };
    BigRational::from_integer(m) * pow2(-s)
}

impl Interval {
    /// `None` if `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational) -> Option<Self> {
        (lo <= hi).then_some(Self { lo, hi })
    }

    pub fn point(x: BigRational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::point(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::point(BigRational::new(p.into(), q.into()))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        BigRational::from_float(x).is_some_and(|x| self.contains(&x))
    }

    /// `other` is a subset of `self`.
    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Certainly below: every point of `self` is below every point of
    /// `other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_gt(&self, other: &Interval) -> bool {
        self.lo > other.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    /// Outward rounding of both endpoints to `bits` significant bits.
    pub fn round_out(&self, bits: u32) -> Self {
        Self {
            lo: round_dyadic(&self.lo, bits, Direction::Down),
            hi: round_dyadic(&self.hi, bits, Direction::Up),
        }
    }

    /// Interval of `x +- radius`.
    pub fn ball(center: &BigRational, radius: &BigRational) -> Self {
        let r = radius.abs();
        Self {
            lo: center - &r,
            hi: center + &r,
        }
    }

    pub fn abs_max(&self) -> BigRational {
        self.lo.abs().max(self.hi.abs())
    }

    /// `1 / self`; `None` if the interval contains zero.
    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        Some(Self {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn checked_div(&self, other: &Interval) -> Option<Self> {
        Some(self * &other.recip()?)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            Self { lo: b, hi: a }
        } else {
            Self { lo: a, hi: b }
        }
    }

    pub fn square(&self) -> Self {
        let (a, b) = (&self.lo * &self.lo, &self.hi * &self.hi);
        if self.contains_zero() {
            Self {
                lo: BigRational::zero(),
                hi: a.max(b),
            }
        } else if self.is_positive() {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    pub fn hull(&self, other: &Interval) -> Self {
        Self {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }

    /// `[lo, hi]` as decimal strings with `digits` fractional digits,
    /// rounded outward.
    pub fn to_decimal_pair(&self, digits: usize) -> (String, String) {
        (
            decimal_string(&self.lo, digits, Direction::Down),
            decimal_string(&self.hi, digits, Direction::Up),
        )
    }
}

fn decimal_string(x: &BigRational, digits: usize, dir: Direction) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = x * BigRational::from_integer(scale);
    let m = match dir {
        Direction::Down => scaled.floor().to_integer(),
        Direction::Up => scaled.ceil().to_integer(),
    };
    let negative = m.is_negative();
    let digits_str = m.abs().to_string();
    let body = if digits == 0 {
        digits_str
    } else {
        let padded = format!("{digits_str:0>width$}", width = digits + 1);
        let (int, frac) = padded.split_at(padded.len() - digits);
        format!("{int}.{frac}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(12);
        let (lo, hi) = self.to_decimal_pair(digits);
        write!(f, "[{lo}, {hi}]")
    }
}

/// Serializes as a pair of decimal strings with 20 fractional digits.
impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (lo, hi) = self.to_decimal_pair(20);
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&lo)?;
        seq.serialize_element(&hi)?;
        seq.end()
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().expect("four products").clone();
        let hi = products.iter().max().expect("four products").clone();
        Interval { lo, hi }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Interval {
            type Output = Interval;
            fn $method(self, rhs: Interval) -> Interval {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Interval> for Interval {
            type Output = Interval;
            fn $method(self, rhs: &Interval) -> Interval {
                (&self).$method(rhs)
            }
        }
        impl $tr<Interval> for &Interval {
            type Output = Interval;
            fn $method(self, rhs: Interval) -> Interval {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}
