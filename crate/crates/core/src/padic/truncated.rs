use core::fmt;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::Zero;

use super::{inverse_mod, pow, reduce, val_exponent, Certified};
use crate::error::{Error, Result};

/// An element of `Z_p` known modulo `p^precision`.
///
/// The residue is kept in `[0, p^precision)`. Binary operations return the
/// smaller of the two precisions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedInt {
    residue: BigInt,
    precision: u32,
    p: u64,
}

impl TruncatedInt {
    pub fn new(value: &BigInt, p: u64, precision: u32) -> Self {
        let residue = reduce(value, &pow(p, precision));
        TruncatedInt {
            residue,
            precision,
            p,
        }
    }

    pub fn from_i64(value: i64, p: u64, precision: u32) -> Self {
        Self::new(&BigInt::from(value), p, precision)
    }

    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> BigInt {
        pow(self.p, self.precision)
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    /// Valuation, or the certificate `>= precision` for a zero residue.
    pub fn valuation(&self) -> Certified {
        match val_exponent(&self.residue, self.p) {
            Some(k) => Certified::Exact(Rational64::from_integer(k as i64)),
            None => Certified::AtLeast(Rational64::from_integer(self.precision as i64)),
        }
    }

    fn combine(&self, other: &Self, value: BigInt) -> Self {
        debug_assert_eq!(self.p, other.p);
        Self::new(&value, self.p, self.precision.min(other.precision))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, &self.residue + &other.residue)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, &self.residue - &other.residue)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.combine(other, &self.residue * &other.residue)
    }

    pub fn neg(&self) -> Self {
        Self::new(&-&self.residue, self.p, self.precision)
    }

    /// Inverse of a unit, exact at the operand precision.
    pub fn mod_inverse(&self) -> Result<Self> {
        match self.valuation() {
            Certified::AtLeast(_) => Err(Error::precision(
                "cannot invert a residue that vanishes at its precision",
            )),
            Certified::Exact(v) if !v.is_zero() => Err(Error::NonUnit),
            Certified::Exact(_) => {
                let inv = inverse_mod(&self.residue, &self.modulus()).ok_or(Error::NonUnit)?;
                Ok(TruncatedInt {
                    residue: inv,
                    precision: self.precision,
                    p: self.p,
                })
            }
        }
    }

    /// Exact division by `p^k`, losing `k` digits of precision.
    pub fn div_p_pow(&self, k: u32) -> Result<Self> {
        if k > self.precision {
            return Err(Error::precision("division exhausts the available digits"));
        }
        let m = pow(self.p, k);
        if !(&self.residue % &m).is_zero() {
            return Err(Error::NotDivisible);
        }
        Ok(Self::new(&(&self.residue / &m), self.p, self.precision - k))
    }
}

impl fmt::Display for TruncatedInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.residue, self.p, self.precision)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inverse_examples() {
        let x = TruncatedInt::from_i64(3, 2, 4);
        assert_eq!(x.mod_inverse().unwrap().residue(), &BigInt::from(11));
        let one = TruncatedInt::from_i64(1, 7, 20);
        assert_eq!(one.mod_inverse().unwrap(), one);
        let two = TruncatedInt::from_i64(2, 2, 4);
        assert_eq!(two.mod_inverse(), Err(Error::NonUnit));
        let zero = TruncatedInt::from_i64(16, 2, 4);
        assert!(matches!(
            zero.mod_inverse(),
            Err(Error::InsufficientPrecision(_))
        ));
    }

    #[test]
    fn zero_residue_is_a_certificate() {
        let z = TruncatedInt::from_i64(81, 3, 4);
        assert_eq!(
            z.valuation(),
            Certified::AtLeast(Rational64::from_integer(4))
        );
        let x = TruncatedInt::from_i64(18, 3, 4);
        assert_eq!(x.valuation(), Certified::Exact(Rational64::from_integer(2)));
    }

    #[test]
    fn precision_is_the_minimum() {
        let a = TruncatedInt::from_i64(5, 3, 10);
        let b = TruncatedInt::from_i64(7, 3, 4);
        assert_eq!(a.mul(&b).precision(), 4);
        assert_eq!(a.mul(&b).residue(), &BigInt::from(35));
        let c = TruncatedInt::from_i64(18, 3, 10).div_p_pow(2).unwrap();
        assert_eq!((c.residue().clone(), c.precision()), (BigInt::from(2), 8));
    }

    proptest! {
        #[test]
        fn inverse_round_trips(x in 1i64..1_000_000, pi in 0usize..3, prec in 1u32..30) {
            let p = [2u64, 3, 5][pi];
            prop_assume!(x % p as i64 != 0);
            let t = TruncatedInt::from_i64(x, p, prec);
            let inv = t.mod_inverse().unwrap();
            prop_assert_eq!(t.mul(&inv), TruncatedInt::from_i64(1, p, prec));
        }
    }
}
