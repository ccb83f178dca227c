//! Interval-certified lower bounds for the constants `delta_0`, `delta_1`.
//!
//! With
//!
//! ```text
//! Phi(c)  = sup_{0<r<1} r + c (1 - r^2) arctanh r
//! H(x, c) = ((1 - c)/2) x + ((1 + c)/2) / x
//! ```
//!
//! a number `delta` is a lower bound for `delta_0` (resp. `delta_1`) as
//! soon as `(2 delta / pi) Phi(c) <= 1` with `c = e^(delta/2)` (resp.
//! `c = e^delta`). `Phi` is bounded above by `H(x1, c)` for any `x1` with
//! `x1 arctanh x1 < (1 + c)/(2c)`, i.e. any `x1` left of the maximiser of
//! `g(x) = x + c (1 - x^2) arctanh x`, and below by `g` at any point.
//!
//! `delta` is always handled as `q pi` with rational `q`, which makes the
//! factor `2 delta / pi = 2q` exact.

pub mod elementary;
pub mod interval;

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, BigRational};
pub use elementary::{arctanh, enclose_elementary, exp, log, pi, Elementary};
pub use interval::Interval;

pub const DEFAULT_PRECISION: u32 = 128;
pub const MAX_PRECISION: u32 = 1024;
pub const MIN_PRECISION: u32 = 64;
pub const MAX_BISECTION_STEPS: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("tolerance not reached at {bits} bits; best enclosure {best}")]
    ToleranceUnreachable { bits: u32, best: Box<Interval> },
    #[error("comparison stayed indeterminate up to {bits} bits; bracket {bracket}")]
    Indeterminate { bits: u32, bracket: Box<Interval> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `e^(-delta/2) < |z f'/f| < e^(delta/2)`, so `c = e^(delta/2)`.
    Delta0,
    /// `L(f) <= e^delta l(f)`, so `c = e^delta`.
    Delta1,
}

impl Mode {
    /// Exponent of `c` as a multiple of `delta`.
    fn exponent_factor(self) -> BigRational {
        match self {
            Mode::Delta0 => BigRational::new(1.into(), 2.into()),
            Mode::Delta1 => BigRational::one(),
        }
    }

    pub fn c_for_delta(self, delta: &Interval, bits: u32) -> Interval {
        exp(&delta.scale(&self.exponent_factor()), bits)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Delta0 => "delta0",
            Mode::Delta1 => "delta1",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "delta0" => Ok(Mode::Delta0),
            "delta1" => Ok(Mode::Delta1),
            other => Err(format!(
                "unknown mode `{other}` (expected delta0 or delta1)"
            )),
        }
    }
}

fn check_unit_open(x: &BigRational, name: &str) -> Result<(), BoundsError> {
    if !x.is_positive() || x >= &BigRational::one() {
        return Err(BoundsError::Domain(format!(
            "{name} must lie in (0, 1), got {x}"
        )));
    }
    Ok(())
}

fn check_c(c: &Interval) -> Result<(), BoundsError> {
    if c.lo() <= &BigRational::one() {
        return Err(BoundsError::Domain(format!("c must exceed 1, got {c}")));
    }
    Ok(())
}

/// `H(x, c)`, written as `x/2 + 1/(2x) + c (1/(2x) - x/2)` so `c` occurs once.
pub fn h_function(x: &BigRational, c: &Interval) -> Result<Interval, BoundsError> {
    check_unit_open(x, "x")?;
    let half = BigRational::new(1.into(), 2.into());
    let inv = x.recip();
    let base = (x + &inv) * &half;
    let slope = (&inv - x) * &half;
    Ok(&Interval::point(base) + &c.scale(&slope))
}

/// `g(x) = x + c (1 - x^2) arctanh x`, whose maximum over `(0, 1)` is
/// `Phi(c)`.
pub fn g_function(x: &BigRational, c: &Interval, bits: u32) -> Result<Interval, BoundsError> {
    check_unit_open(x, "x")?;
    let at = arctanh(&Interval::point(x.clone()), bits)?;
    Ok(g_from_arctanh(x, c, &at))
}

fn g_from_arctanh(x: &BigRational, c: &Interval, at: &Interval) -> Interval {
    let one_minus_x2 = BigRational::one() - x * x;
    &Interval::point(x.clone()) + &(c * at).scale(&one_minus_x2)
}

/// `(1 + c)/(2c) - x1 arctanh x1`; strictly positive exactly when `x1`
/// lies left of the maximiser of `g`, which certifies `Phi(c) < H(x1, c)`.
pub fn lemma_tech_check(
    c: &Interval,
    x1: &BigRational,
    bits: u32,
) -> Result<Interval, BoundsError> {
    check_unit_open(x1, "x1")?;
    check_c(c)?;
    let at = arctanh(&Interval::point(x1.clone()), bits)?;
    Ok(margin_from_arctanh(c, x1, &at))
}

fn margin_from_arctanh(c: &Interval, x1: &BigRational, at: &Interval) -> Interval {
    let half = Interval::from_ratio(1, 2);
    let inv_2c = c
        .recip()
        .expect("c > 1")
        .scale(&BigRational::new(1.into(), 2.into()));
    &(&half + &inv_2c) - &at.scale(x1)
}

/// State of the bisection for the maximiser `x0` of `g`: `left` is always
/// certified to lie below `x0` (margin > 0) and `right` above it.
#[derive(Debug, Clone)]
struct MaximiserSearch<'a> {
    c: &'a Interval,
    bits: u32,
    left: BigRational,
    right: BigRational,
    /// Enclosure of `g` at the best lower-bound point so far.
    lower: Option<(BigRational, Interval)>,
    steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Moved,
    Stalled,
}

impl<'a> MaximiserSearch<'a> {
    fn new(c: &'a Interval, bits: u32) -> Self {
        Self {
            c,
            bits,
            left: BigRational::zero(),
            right: BigRational::one(),
            lower: None,
            steps: 0,
        }
    }

    fn step(&mut self) -> Step {
        let mid = (&self.left + &self.right) / BigRational::from_integer(2.into());
        let at = arctanh(&Interval::point(mid.clone()), self.bits).expect("mid in (0, 1)");
        let margin = margin_from_arctanh(self.c, &mid, &at);
        let g = g_from_arctanh(&mid, self.c, &at);
        if self
            .lower
            .as_ref()
            .is_none_or(|(_, best)| g.lo() > best.lo())
        {
            self.lower = Some((mid.clone(), g));
        }
        self.steps += 1;
        if margin.is_positive() {
            self.left = mid;
            Step::Moved
        } else if margin.is_negative() {
            self.right = mid;
            Step::Moved
        } else {
            Step::Stalled
        }
    }

    fn upper(&self) -> Option<Interval> {
        if self.left.is_zero() {
            return None;
        }
        Some(h_function(&self.left, self.c).expect("left in (0, 1)"))
    }

    fn lower(&self) -> Option<&Interval> {
        self.lower.as_ref().map(|(_, g)| g)
    }

    fn enclosure(&self) -> Option<Interval> {
        let upper = self.upper()?;
        let lower = self.lower()?;
        Interval::new(lower.lo().clone(), upper.hi().clone())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiEnclosure {
    pub value: Interval,
    /// Certified left of the maximiser; `value.hi` comes from `H(x1, c)`.
    #[serde(with = "rational::as_string")]
    pub x1: BigRational,
    /// Point whose `g` value gives `value.lo`.
    #[serde(with = "rational::as_string")]
    pub sample: BigRational,
    pub steps: usize,
}

/// Encloses `Phi(c)` to width at most `tol`: lower end from `g` at a sample
/// point, upper end from `H(x1, c)` at the bisection iterate just left of
/// the sign change of `g'`.
pub fn phi_enclose(
    c: &Interval,
    tol: &BigRational,
    bits: u32,
) -> Result<PhiEnclosure, BoundsError> {
    check_c(c)?;
    if !tol.is_positive() {
        return Err(BoundsError::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let mut search = MaximiserSearch::new(c, bits);
    while search.steps < MAX_BISECTION_STEPS {
        let moved = search.step();
        if let Some(value) = search.enclosure() {
            if &value.width() <= tol {
                let (sample, _) = search.lower.clone().expect("lower set by step");
                return Ok(PhiEnclosure {
                    value,
                    x1: search.left.clone(),
                    sample,
                    steps: search.steps,
                });
            }
        }
        if moved == Step::Stalled {
            break;
        }
    }
    let best = search.enclosure().unwrap_or_else(|| {
        let lo = search
            .lower()
            .map_or_else(BigRational::one, |g| g.lo().clone());
        Interval::new(lo.clone(), lo).expect("point")
    });
    Err(BoundsError::ToleranceUnreachable {
        bits,
        best: Box::new(best),
    })
}

/// `delta = q pi`, kept exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiMultiple(pub BigRational);

impl PiMultiple {
    pub fn enclose(&self, bits: u32) -> Interval {
        pi(bits).scale(&self.0)
    }
}

impl fmt::Display for PiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} pi", self.0)
    }
}

impl Serialize for PiMultiple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundStatus {
    /// Both strict inequalities hold.
    Certified,
    /// One of them fails outright for this `(delta, x1)`.
    Refuted,
    /// The enclosures straddle the threshold even at the highest precision.
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub mode: Mode,
    pub delta: PiMultiple,
    #[serde(with = "rational::as_string")]
    pub x1: BigRational,
    /// `(1 + c)/(2c) - x1 arctanh x1`
    pub lemma_margin: Interval,
    /// `(2 delta / pi) H(x1, c)`
    pub threshold: Interval,
    pub certified: bool,
    pub status: BoundStatus,
    pub precision_bits: u32,
}

fn evaluate_bound(
    q: &BigRational,
    mode: Mode,
    x1: &BigRational,
    bits: u32,
) -> Result<(Interval, Interval), BoundsError> {
    let delta = PiMultiple(q.clone()).enclose(bits + 16);
    let c = mode.c_for_delta(&delta, bits);
    let margin = lemma_tech_check(&c, x1, bits)?;
    let two_q = q * BigRational::from_integer(2.into());
    let threshold = h_function(x1, &c)?.scale(&two_q);
    Ok((margin, threshold))
}

fn classify(margin: &Interval, threshold: &Interval) -> BoundStatus {
    let one = Interval::from_integer(1);
    if margin.is_positive() && threshold.certainly_lt(&one) {
        BoundStatus::Certified
    } else if margin.is_negative() || threshold.certainly_gt(&one) {
        BoundStatus::Refuted
    } else {
        BoundStatus::Indeterminate
    }
}

/// Checks the sufficient condition for `delta = q pi <= delta_0` (or
/// `delta_1`) at the given `x1`. Without `x1`, one is picked by bisecting
/// towards the maximiser of `g`. Indeterminate outcomes are retried with
/// doubled precision up to [`MAX_PRECISION`].
pub fn check_lower_bound(
    q: &BigRational,
    mode: Mode,
    x1: Option<&BigRational>,
    bits: u32,
) -> Result<BoundReport, BoundsError> {
    if !q.is_positive() {
        return Err(BoundsError::Domain(format!(
            "delta must be positive, got {q} pi"
        )));
    }
    if let Some(x1) = x1 {
        check_unit_open(x1, "x1")?;
    }
    let mut bits = bits.max(MIN_PRECISION);
    loop {
        let x1 = match x1 {
            Some(x) => x.clone(),
            None => auto_x1(q, mode, bits)?,
        };
        let (margin, threshold) = evaluate_bound(q, mode, &x1, bits)?;
        let status = classify(&margin, &threshold);
        if status != BoundStatus::Indeterminate || bits >= MAX_PRECISION {
            return Ok(BoundReport {
                mode,
                delta: PiMultiple(q.clone()),
                x1,
                lemma_margin: margin,
                threshold,
                certified: status == BoundStatus::Certified,
                status,
                precision_bits: bits,
            });
        }
        bits = (bits * 2).min(MAX_PRECISION);
    }
}

fn auto_x1(q: &BigRational, mode: Mode, bits: u32) -> Result<BigRational, BoundsError> {
    let delta = PiMultiple(q.clone()).enclose(bits + 16);
    let c = mode.c_for_delta(&delta, bits);
    check_c(&c)?;
    let mut search = MaximiserSearch::new(&c, bits);
    // Bisect until H(x1, c) is within 2^-40 of the best lower bound or the
    // sign of g' can no longer be resolved.
    let tol = interval::pow2(-40);
    while search.steps < MAX_BISECTION_STEPS {
        let moved = search.step();
        if search.enclosure().is_some_and(|e| e.width() <= tol) || moved == Step::Stalled {
            break;
        }
    }
    if search.left.is_zero() {
        return Err(BoundsError::Domain(
            "no x1 with positive margin found".into(),
        ));
    }
    Ok(search.left)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    /// `(2 delta/pi) Phi(c) < 1`
    Below,
    /// `(2 delta/pi) Phi(c) > 1`
    Above,
    Unknown,
}

/// Decides on which side of 1 the map `delta -> (2 delta/pi) Phi(c(delta))`
/// lies at a (plain, not pi-scaled) `delta`, refining the maximiser search
/// only as far as the decision needs.
fn threshold_side(mode: Mode, delta: &BigRational, bits: u32) -> Side {
    let p = pi(bits + 16);
    let factor = p
        .recip()
        .expect("pi > 0")
        .scale(&(delta * BigRational::from_integer(2.into())));
    let c = mode.c_for_delta(&Interval::point(delta.clone()), bits);
    let one = Interval::from_integer(1);
    let mut search = MaximiserSearch::new(&c, bits);
    while search.steps < MAX_BISECTION_STEPS {
        let moved = search.step();
        if let Some(upper) = search.upper() {
            if (&factor * &upper).certainly_lt(&one) {
                return Side::Below;
            }
        }
        if let Some(lower) = search.lower() {
            if (&factor * lower).certainly_gt(&one) {
                return Side::Above;
            }
        }
        if moved == Step::Stalled {
            break;
        }
    }
    Side::Unknown
}

fn threshold_side_escalating(mode: Mode, delta: &BigRational, bits: u32) -> (Side, u32) {
    let mut bits = bits.max(MIN_PRECISION);
    loop {
        let side = threshold_side(mode, delta, bits);
        if side != Side::Unknown || bits >= MAX_PRECISION {
            return (side, bits);
        }
        bits = (bits * 2).min(MAX_PRECISION);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdBracket {
    pub mode: Mode,
    /// Contains the root of `(2 delta/pi) Phi(c(delta)) = 1`.
    pub bracket: Interval,
    pub iterations: usize,
    pub precision_bits: u32,
}

/// Bisection on `delta` for the root of `(2 delta/pi) Phi(c(delta)) = 1`.
/// The map is increasing, and every move is backed by a strict interval
/// comparison against 1, so the returned bracket provably contains the
/// root.
pub fn solve_threshold(
    mode: Mode,
    tol: &BigRational,
    bits: u32,
) -> Result<ThresholdBracket, BoundsError> {
    if !tol.is_positive() {
        return Err(BoundsError::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    // the left side vanishes at delta = 0, so only the right end needs a check
    let mut lo = BigRational::zero();
    let mut hi = BigRational::from_integer(4.into());
    let (side, mut used) = threshold_side_escalating(mode, &hi, bits);
    if side != Side::Above {
        return Err(BoundsError::Indeterminate {
            bits: used,
            bracket: Box::new(Interval::new(lo, hi).expect("lo < hi")),
        });
    }
    let mut iterations = 0;
    while &(&hi - &lo) > tol && iterations < MAX_BISECTION_STEPS {
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        let (side, b) = threshold_side_escalating(mode, &mid, bits);
        used = used.max(b);
        iterations += 1;
        match side {
            Side::Below => lo = mid,
            Side::Above => hi = mid,
            Side::Unknown => {
                return Err(BoundsError::Indeterminate {
                    bits: b,
                    bracket: Box::new(Interval::new(lo, hi).expect("lo < hi")),
                })
            }
        }
    }
    Ok(ThresholdBracket {
        mode,
        bracket: Interval::new(lo, hi).expect("lo < hi"),
        iterations,
        precision_bits: used,
    })
}

/// `(2/pi) (1 + L) log(L / l)`, an upper bound for the pre-Schwarzian norm
/// when `l <= |z f'/f| <= L`.
pub fn preschwarzian_bound(
    big_l: &Interval,
    small_l: &Interval,
    bits: u32,
) -> Result<Interval, BoundsError> {
    let one = Interval::from_integer(1);
    if !small_l.is_positive() {
        return Err(BoundsError::Domain(format!(
            "l must be positive, got {small_l}"
        )));
    }
    if small_l.certainly_gt(&one) || big_l.certainly_lt(&one) {
        return Err(BoundsError::Domain(format!(
            "need 0 < l <= 1 <= L, got l = {small_l}, L = {big_l}"
        )));
    }
    let ratio = big_l.checked_div(small_l).expect("l > 0");
    // L/l >= 1 for the true values; clip the enclosure there so log stays
    // defined when both endpoints are 1.
    let ratio = Interval::new(
        ratio.lo().clone().max(BigRational::one()),
        ratio.hi().clone().max(BigRational::one()),
    )
    .expect("ordered");
    let lg = log(&ratio, bits)?;
    let two_over_pi = pi(bits + 16)
        .recip()
        .expect("pi > 0")
        .scale(&BigRational::from_integer(2.into()));
    Ok(&(&two_over_pi * &(&one + big_l)) * &lg)
}

/// `(l(F_a), L(F_a)) = (e^(-pi a/2), e^(pi a/2))`.
pub fn annulus_bounds(a: &BigRational, bits: u32) -> Result<(Interval, Interval), BoundsError> {
    if !a.is_positive() {
        return Err(BoundsError::Domain(format!("a must be positive, got {a}")));
    }
    let half_pi_a = pi(bits + 16).scale(&(a / BigRational::from_integer(2.into())));
    Ok((exp(&-&half_pi_a, bits), exp(&half_pi_a, bits)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rational_from_i64 as r;

    fn e_pi(q: BigRational, bits: u32) -> Interval {
        exp(&PiMultiple(q).enclose(bits + 16), bits)
    }

    #[test]
    fn h_at_c_one_is_reciprocal() {
        let h = h_function(&r(3, 4), &Interval::from_integer(1)).unwrap();
        assert_eq!(h, Interval::point(r(4, 3)));
        assert!(h_function(&r(1, 1), &Interval::from_integer(2)).is_err());
        assert!(h_function(&r(0, 1), &Interval::from_integer(2)).is_err());
    }

    #[test]
    fn h_closed_forms() {
        let c = e_pi(r(1, 6), 128);
        let h = h_function(&r(17, 22), &c).unwrap().scale(&r(2, 3));
        // (773 + 195 e^(pi/6)) / 1122
        let closed = (&Interval::from_integer(773) + &c.scale(&r(195, 1))).scale(&r(1, 1122));
        assert!(h.overlaps(&closed));
        assert!((h.lo_f64() - 0.982).abs() < 1e-3);

        let c = e_pi(r(7, 25), 128);
        let h = h_function(&r(20, 27), &c).unwrap().scale(&r(14, 25));
        let closed = (&Interval::from_integer(7903) + &c.scale(&r(2303, 1))).scale(&r(1, 13500));
        assert!(h.overlaps(&closed));
        assert!((h.lo_f64() - 0.9965).abs() < 1e-3);
    }

    #[test]
    fn lemma_margins() {
        let c = e_pi(r(1, 6), 128);
        let m = lemma_tech_check(&c, &r(17, 22), 128).unwrap();
        assert!(m.is_positive());
        assert!((m.lo_f64() - 0.00255).abs() < 1e-5);
        // closed form (1 + e^(-pi/6))/2 - (17/44) log(39/5)
        let closed = &(&Interval::from_integer(1) + &c.recip().unwrap()).scale(&r(1, 2))
            - &log(&Interval::from_ratio(39, 5), 128)
                .unwrap()
                .scale(&r(17, 44));
        assert!(m.overlaps(&closed));

        let c = e_pi(r(7, 25), 128);
        let m = lemma_tech_check(&c, &r(20, 27), 128).unwrap();
        assert!(m.is_positive());
        assert!((m.lo_f64() - 0.00219).abs() < 1e-5);

        let c = e_pi(r(1, 6), 128);
        let m = lemma_tech_check(&c, &r(999, 1000), 128).unwrap();
        assert!(m.is_negative());

        assert!(lemma_tech_check(&Interval::from_ratio(1, 2), &r(1, 2), 64).is_err());
    }

    #[test]
    fn phi_sandwich_and_chain() {
        let c = e_pi(r(1, 6), 128);
        let tol = r(1, 1_000_000_000);
        let phi = phi_enclose(&c, &tol, 128).unwrap();
        assert!(phi.value.width() <= tol);
        assert!(phi.value.lo() > &BigRational::one());
        assert!(phi.value.scale(&r(2, 3)).hi() < &BigRational::one());
        let g = g_function(&phi.sample, &c, 128).unwrap();
        let h = h_function(&phi.x1, &c).unwrap();
        assert!(g.lo() <= h.hi());
        assert!(lemma_tech_check(&c, &phi.x1, 128).unwrap().is_positive());
    }

    #[test]
    fn phi_is_monotone_in_c() {
        let tol = r(1, 1_000_000);
        let small = phi_enclose(&e_pi(r(7, 25), 128), &tol, 128).unwrap();
        let big = phi_enclose(&e_pi(r(1, 2), 128), &tol, 128).unwrap();
        assert!(small.value.certainly_lt(&big.value));
    }

    #[test]
    fn phi_rejects_bad_input() {
        assert!(phi_enclose(&Interval::from_integer(1), &r(1, 10), 64).is_err());
        assert!(phi_enclose(&Interval::from_integer(2), &r(0, 1), 64).is_err());
        // a tolerance far below what 64 bits can resolve
        let tiny = interval::pow2(-400);
        assert!(matches!(
            phi_enclose(&Interval::from_integer(2), &tiny, 64),
            Err(BoundsError::ToleranceUnreachable { .. })
        ));
    }

    #[test]
    fn reference_chains_certify() {
        let rep = check_lower_bound(&r(1, 3), Mode::Delta0, Some(&r(17, 22)), 128).unwrap();
        assert!(rep.certified);
        assert!(
            rep.threshold.contains_f64(0.98297) || (rep.threshold.lo_f64() - 0.982).abs() < 1e-3
        );
        let rep = check_lower_bound(&r(7, 25), Mode::Delta1, Some(&r(20, 27)), 128).unwrap();
        assert!(rep.certified);
    }

    #[test]
    fn too_large_delta_is_refuted() {
        let rep = check_lower_bound(&r(5, 7), Mode::Delta0, Some(&r(17, 22)), 128).unwrap();
        assert!(!rep.certified);
        assert_eq!(rep.status, BoundStatus::Refuted);
    }

    #[test]
    fn automatic_x1() {
        let rep = check_lower_bound(&r(1, 3), Mode::Delta0, None, 128).unwrap();
        assert!(rep.certified);
        assert!(rep.lemma_margin.is_positive());
        assert!(check_lower_bound(&r(0, 1), Mode::Delta0, None, 128).is_err());
    }

    #[test]
    fn preschwarzian_examples() {
        let one = Interval::from_integer(1);
        let b = preschwarzian_bound(&one, &one, 64).unwrap();
        assert!(b.contains(&BigRational::zero()));

        let b = preschwarzian_bound(&Interval::from_integer(2), &Interval::from_ratio(1, 2), 64)
            .unwrap();
        let want = 2.0 / std::f64::consts::PI * 3.0 * 4.0f64.ln();
        assert!((b.lo_f64() - want).abs() < 1e-12);
        assert!((want - 2.648).abs() < 1e-3);

        assert!(
            preschwarzian_bound(&Interval::from_ratio(1, 2), &Interval::from_ratio(1, 4), 64)
                .is_err()
        );
        assert!(preschwarzian_bound(&one, &Interval::from_integer(0), 64).is_err());
    }

    #[test]
    fn preschwarzian_for_f_a() {
        // log(L/l) = pi a, so the bound is 2a (1 + e^(pi a/2))
        let a = r(5, 7);
        let (l, big_l) = annulus_bounds(&a, 128).unwrap();
        let b = preschwarzian_bound(&big_l, &l, 128).unwrap();
        let closed = (&Interval::from_integer(1) + &big_l).scale(&(&a * r(2, 1)));
        assert!(b.overlaps(&closed));
    }

    #[test]
    fn annulus_examples() {
        let (l, big_l) = annulus_bounds(&r(1, 1000), 64).unwrap();
        assert!((l.lo_f64() - 1.0).abs() < 0.01 && (big_l.hi_f64() - 1.0).abs() < 0.01);

        let (l, big_l) = annulus_bounds(&r(5, 7), 128).unwrap();
        let ratio = big_l.checked_div(&l).unwrap();
        assert!((ratio.lo_f64() - (5.0 * std::f64::consts::PI / 7.0).exp()).abs() < 1e-12);
        assert!((ratio.lo_f64() - 9.43).abs() < 0.01);

        let (l, big_l) = annulus_bounds(&r(7, 11), 128).unwrap();
        assert!((&l * &big_l).contains(&BigRational::one()));

        assert!(annulus_bounds(&r(0, 1), 64).is_err());
    }

    #[test]
    fn bound_report_json() {
        let rep = check_lower_bound(&r(1, 3), Mode::Delta0, Some(&r(17, 22)), 128).unwrap();
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["mode"], "delta0");
        assert_eq!(json["delta"], "1/3 pi");
        assert_eq!(json["x1"], "17/22");
        assert_eq!(json["certified"], true);
        assert_eq!(json["precision_bits"], 128);
        assert!(json["lemma_margin"][0]
            .as_str()
            .unwrap()
            .starts_with("0.0025"));
    }
}
