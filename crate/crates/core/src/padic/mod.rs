//! Exact integer and truncated p-adic arithmetic.
//!
//! Everything above this layer is phrased in terms of [`Valuation`]s of exact
//! integers, [`TruncatedInt`] residues modulo `p^N`, and integer polynomials
//! with exact resultants.

mod poly;
mod truncated;
mod valuation;

pub use poly::{resultant, sylvester_resultant, IntPoly};
pub use truncated::TruncatedInt;
pub use valuation::{Certified, Valuation};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The base field `Q_p` together with a working precision cap in base-`p` digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BaseField {
    p: u64,
    precision: u32,
}

impl BaseField {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        check_prime(p)?;
        if precision == 0 {
            return Err(Error::ZeroPrecision);
        }
        Ok(BaseField { p, precision })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Default cap for extension arithmetic of ramification index `e`.
    pub fn default_precision(e: usize) -> u32 {
        32 * e as u32
    }

    pub fn truncated(&self, value: &BigInt) -> TruncatedInt {
        TruncatedInt::new(value, self.p, self.precision)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Exponent of `p` in `n`, `None` for `n = 0`.
pub fn val_exponent(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    if p == 2 {
        return n.trailing_zeros();
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(k);
        }
        n = q;
        k += 1;
    }
}

/// The `p`-adic valuation of an exact integer; `Infinity` iff `n = 0`.
pub fn val_int(n: &BigInt, p: u64) -> Valuation {
    match val_exponent(n, p) {
        Some(k) => Valuation::int(k as i64),
        None => Valuation::Infinity,
    }
}

pub(crate) fn pow(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

/// Least nonnegative residue of `x` modulo `m`.
pub(crate) fn reduce(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    debug_assert!(!r.is_negative());
    r
}

/// Inverse of `x` modulo `m`, if it exists.
pub(crate) fn inverse_mod(x: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = reduce(x, m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(reduce(&e.x, m))
    } else {
        None
    }
}
