use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::padic::{check_prime, val_exponent, IntPoly};

/// A monic Eisenstein polynomial `X^e + a_{e-1} X^{e-1} + ... + a_0` over `Q_p`.
///
/// Only the tail `a_0..a_{e-1}` is stored. Ordering is lexicographic on
/// `(p, a_0, a_1, ...)`, which is what the census uses to pick representatives.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EisensteinPoly {
    p: u64,
    tail: Vec<BigInt>,
}

impl EisensteinPoly {
    /// Validates `a_0..a_{e-1}`: every `v_p(a_i) >= 1`, and `v_p(a_0) = 1`.
    pub fn new(p: u64, tail: Vec<BigInt>) -> Result<Self> {
        check_prime(p)?;
        if tail.is_empty() {
            return Err(Error::ConstantPolynomial);
        }
        for (i, a) in tail.iter().enumerate() {
            let ok = match val_exponent(a, p) {
                None => i != 0,
                Some(v) => v >= 1 && (i != 0 || v == 1),
            };
            if !ok {
                return Err(Error::NotEisenstein { index: i });
            }
        }
        Ok(EisensteinPoly { p, tail })
    }

    pub fn from_i64(p: u64, tail: &[i64]) -> Result<Self> {
        Self::new(p, tail.iter().copied().map(BigInt::from).collect())
    }

    /// Builds from a full coefficient vector (low to high, monic).
    pub fn from_poly(poly: &IntPoly, p: u64) -> Result<Self> {
        let coeffs = poly.coeffs();
        match coeffs.len() {
            0 | 1 => Err(Error::ConstantPolynomial),
            n if !coeffs[n - 1].is_one() => Err(Error::NotMonic),
            n => Self::new(p, coeffs[..n - 1].to_vec()),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.tail.len()
    }

    /// `a_i` for `i < e`; `a_e = 1`.
    pub fn coeff(&self, i: usize) -> BigInt {
        match i.cmp(&self.tail.len()) {
            core::cmp::Ordering::Less => self.tail[i].clone(),
            core::cmp::Ordering::Equal => BigInt::one(),
            core::cmp::Ordering::Greater => BigInt::zero(),
        }
    }

    pub fn tail(&self) -> &[BigInt] {
        &self.tail
    }

    pub fn to_poly(&self) -> IntPoly {
        let mut c = self.tail.clone();
        c.push(BigInt::one());
        IntPoly::new(c)
    }

    /// Copy with coefficient `i` replaced. The result is re-validated.
    pub fn with_coeff(&self, i: usize, value: BigInt) -> Result<Self> {
        let mut tail = self.tail.clone();
        tail[i] = value;
        Self::new(self.p, tail)
    }

    /// Tame iff `p` does not divide the degree.
    pub fn is_tame(&self) -> bool {
        !(self.degree() as u64).is_multiple_of(self.p)
    }
}

/// Validates a full monic coefficient vector as an Eisenstein polynomial.
pub fn make_eisenstein(coeffs: &[BigInt], p: u64) -> Result<EisensteinPoly> {
    EisensteinPoly::from_poly(&IntPoly::new(coeffs.to_vec()), p)
}

impl fmt::Display for EisensteinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}
