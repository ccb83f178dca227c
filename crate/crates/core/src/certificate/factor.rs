//! Trial-division factoring of the exact certificate values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Default trial-division limit.
pub const TRIAL_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// `(prime, exponent)` in increasing prime order.
    pub primes: Vec<(u64, u32)>,
    /// What is left after trial division, always positive; 1 when fully
    /// factored.
    pub cofactor: BigInt,
}

impl Factorization {
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.primes
            .iter()
            .find(|(q, _)| *q == p)
            .map_or(0, |(_, e)| *e)
    }
}

/// Strips every prime factor up to `limit` from `|n|`.
pub fn trial_factor(n: &BigInt, limit: u64) -> Factorization {
    let mut rest = n.abs();
    let mut primes = Vec::new();
    if rest.is_zero() {
        return Factorization {
            primes,
            cofactor: rest,
        };
    }
    let mut p: u64 = 2;
    while p <= limit && !rest.is_one() {
        let bp = BigInt::from(p);
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            primes.push((p, e));
        }
        if &bp * &bp > rest {
            // rest is 1 or a prime
            if !rest.is_one() {
                if let Ok(small) = u64::try_from(&rest) {
                    if small <= limit {
                        primes.push((small, 1));
                        rest = BigInt::one();
                    }
                }
            }
            break;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    Factorization {
        primes,
        cofactor: rest,
    }
}

/// Divides out each listed factor once; `None` if one does not divide.
pub fn divide_out(n: &BigInt, factors: &[BigInt]) -> Option<BigInt> {
    let mut rest = n.abs();
    for f in factors {
        let (q, r) = rest.div_rem(f);
        if !r.is_zero() {
            return None;
        }
        rest = q;
    }
    Some(rest)
}

pub fn format_factorization(f: &Factorization) -> String {
    let mut parts: Vec<String> = f
        .primes
        .iter()
        .map(|&(p, e)| {
            if e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect();
    if !f.cofactor.is_one() {
        parts.push(format!("({})", f.cofactor));
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" * ")
    }
}
