//! Truncated power series with exact rational coefficients.
//!
//! A [`PowerSeries`] of order `N` stores the coefficients of `z^0..=z^N` and
//! stands for its function modulo `z^(N+1)`. Binary operations truncate to
//! the smaller of the two orders.
//!
//! On top of the generic arithmetic sit the concrete series used for the
//! extremal family: `arctan z`, `Q_a(z) = exp(2a arctan z)`,
//! `log(F_a(z)/z)` and `F_a(z)` itself, where `z F_a'(z) / F_a(z) = Q_a(z)`.

use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::{BigRational, RationalString};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("exp_series needs a vanishing constant term, got {0}")]
    NonzeroConstantTerm(BigRational),
    #[error("logarithm needs a series with constant term 1, got {0}")]
    ConstantTermNotOne(BigRational),
    #[error("a power series needs at least one coefficient")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        Ok(Self { coeffs })
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_ratios(pairs: &[(i64, i64)]) -> Result<Self, SeriesError> {
        Self::new(
            pairs
                .iter()
                .map(|&(p, q)| BigRational::new(p.into(), q.into()))
                .collect(),
        )
    }

    pub fn from_integers(values: &[i64]) -> Result<Self, SeriesError> {
        Self::new(
            values
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
        )
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// The monomial `z` (order at least 1).
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order.max(1));
        s.coeffs[1] = BigRational::one();
        s
    }

    /// Highest power of `z` that is known.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Pads with zero coefficients up to `order`. The padded coefficients
    /// are claims that those coefficients vanish, so use only for
    /// polynomials.
    pub fn extend_with_zeros(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order.max(self.order()) + 1, BigRational::zero());
        Self { coeffs }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn multiply(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(BigRational::zero(), |acc, k| {
                    let (p, q) = (&self.coeffs[k], &other.coeffs[n - k]);
                    if p.is_zero() || q.is_zero() {
                        acc
                    } else {
                        acc + p * q
                    }
                })
            })
            .collect();
        Self { coeffs }
    }

    /// `exp` of a series with zero constant term, by the recurrence that
    /// comes from comparing coefficients in `h' = g' h`:
    /// `h_0 = 1`, `h_n = (1/n) sum_{k<n} (n-k) g_{n-k} h_k`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm(self.coeffs[0].clone()));
        }
        let order = self.order();
        // (n-k) g_{n-k}, indexed by n-k.
        let weighted: Vec<BigRational> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, g)| g * BigRational::from_integer(BigInt::from(i)))
            .collect();
        let mut out = Vec::with_capacity(order + 1);
        out.push(BigRational::one());
        for n in 1..=order {
            let sum = (0..n).fold(BigRational::zero(), |acc, k| {
                let w = &weighted[n - k];
                if w.is_zero() {
                    acc
                } else {
                    acc + w * &out[k]
                }
            });
            out.push(sum / BigRational::from_integer(BigInt::from(n)));
        }
        Ok(Self { coeffs: out })
    }

    /// `log p` for a series with `p(0) = 1`: the unique `g` with `g(0) = 0`
    /// and `exp(g) = p`. Solves the `exp` recurrence for `g` instead of `h`:
    /// `n g_n = n p_n - sum_{0<k<n} k g_k p_{n-k}`.
    pub fn log1p_composed(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::ConstantTermNotOne(self.coeffs[0].clone()));
        }
        let order = self.order();
        // k g_k, indexed by k.
        let mut weighted: Vec<BigRational> = vec![BigRational::zero(); order + 1];
        for n in 1..=order {
            let nn = BigRational::from_integer(BigInt::from(n));
            let mut value = &nn * &self.coeffs[n];
            for k in 1..n {
                if !weighted[k].is_zero() && !self.coeffs[n - k].is_zero() {
                    value -= &weighted[k] * &self.coeffs[n - k];
                }
            }
            weighted[n] = value;
        }
        let coeffs = weighted
            .into_iter()
            .enumerate()
            .map(|(k, w)| {
                if k == 0 {
                    BigRational::zero()
                } else {
                    w / BigRational::from_integer(BigInt::from(k))
                }
            })
            .collect();
        Ok(Self { coeffs })
    }

    /// `f(z)/z` for a series with zero constant term; the order drops by one.
    pub fn divide_by_z(&self) -> Option<Self> {
        if !self.coeffs[0].is_zero() || self.order() == 0 {
            return None;
        }
        Some(Self {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// `z f(z)`; the order grows by one.
    pub fn multiply_by_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }
}

fn zip_truncated(
    a: &PowerSeries,
    b: &PowerSeries,
    op: impl Fn(&BigRational, &BigRational) -> BigRational,
) -> PowerSeries {
    let order = a.order().min(b.order());
    PowerSeries {
        coeffs: (0..=order)
            .map(|k| op(&a.coeffs[k], &b.coeffs[k]))
            .collect(),
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        zip_truncated(self, rhs, |x, y| x + y)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        zip_truncated(self, rhs, |x, y| x - y)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::rational::vec_as_strings::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let coeffs: Vec<BigRational> = Vec::<RationalString>::deserialize(d)?
            .into_iter()
            .map(|r| r.0)
            .collect();
        PowerSeries::new(coeffs).map_err(serde::de::Error::custom)
    }
}

pub fn series_multiply(p: &PowerSeries, q: &PowerSeries) -> PowerSeries {
    p.multiply(q)
}

pub fn exp_series(g: &PowerSeries) -> Result<PowerSeries, SeriesError> {
    g.exp()
}

pub fn series_log1p_composed(p: &PowerSeries) -> Result<PowerSeries, SeriesError> {
    p.log1p_composed()
}

/// `arctan z = sum (-1)^n z^(2n+1) / (2n+1)` through `z^order`.
pub fn arctan_series(order: usize) -> PowerSeries {
    let coeffs = (0..=order)
        .map(|k| {
            if k % 2 == 0 {
                BigRational::zero()
            } else {
                let sign: i64 = if (k / 2) % 2 == 0 { 1 } else { -1 };
                BigRational::new(sign.into(), BigInt::from(k))
            }
        })
        .collect();
    PowerSeries { coeffs }
}

/// `Q_a(z) = exp(2a arctan z)`; coefficients `b_n` are polynomials in `a`.
pub fn q_a_series(a: &BigRational, order: usize) -> PowerSeries {
    let two_a = a * BigRational::from_integer(2.into());
    arctan_series(order)
        .scale(&two_a)
        .exp()
        .expect("arctan has no constant term")
}

/// `log(F_a(z)/z) = sum_{n>=1} (b_n / n) z^n` through `z^order`.
pub fn log_f_a_over_z_series(a: &BigRational, order: usize) -> PowerSeries {
    let q = q_a_series(a, order);
    let coeffs = q
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, b)| {
            if n == 0 {
                BigRational::zero()
            } else {
                b / BigRational::from_integer(BigInt::from(n))
            }
        })
        .collect();
    PowerSeries { coeffs }
}

/// `F_a(z) = z exp(log(F_a(z)/z))` through `z^order`.
pub fn f_a_series(a: &BigRational, order: usize) -> PowerSeries {
    let order = order.max(1);
    log_f_a_over_z_series(a, order - 1)
        .exp()
        .expect("log(F_a/z) has no constant term")
        .multiply_by_z()
}

/// Koebe function `z/(1-z)^2 = sum n z^n`.
pub fn koebe_series(order: usize) -> PowerSeries {
    PowerSeries {
        coeffs: (0..=order)
            .map(|n| BigRational::from_integer(BigInt::from(n)))
            .collect(),
    }
}
