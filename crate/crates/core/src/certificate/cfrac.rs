//! Continued-fraction rounding of doubles to small-denominator rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::BigRational;

/// Last continued-fraction convergent of `x` whose denominator does not
/// exceed `max_denominator`. The double is first read exactly as a dyadic
/// rational, so the expansion is of the value actually stored.
pub fn best_convergent(x: f64, max_denominator: u64) -> Option<BigRational> {
    let exact = BigRational::from_float(x)?;
    Some(convergent_of(&exact, &BigInt::from(max_denominator.max(1))))
}

fn convergent_of(x: &BigRational, bound: &BigInt) -> BigRational {
    // h_{-1}/k_{-1} = 1/0, h_{-2}/k_{-2} = 0/1
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    let mut numer = x.numer().clone();
    let mut denom = x.denom().clone();
    let mut best = BigRational::from_integer(x.floor().to_integer());
    loop {
        let (q, r) = numer.div_mod_floor(&denom);
        let h_next = &q * &h + &h_prev;
        let k_next = &q * &k + &k_prev;
        if &k_next > bound {
            break;
        }
        best = BigRational::new(h_next.clone(), k_next.clone());
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        if r.is_zero() {
            break;
        }
        numer = std::mem::replace(&mut denom, r);
        debug_assert!(denom.is_positive());
    }
    best
}

/// Componentwise [`best_convergent`]; non-finite components become `None`.
pub fn rationalize(v: &[f64], max_denominator: u64) -> Option<Vec<BigRational>> {
    v.iter()
        .map(|&x| best_convergent(x, max_denominator))
        .collect()
}
