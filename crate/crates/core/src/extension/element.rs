use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Zero};

use super::EisensteinPoly;
use crate::error::{Error, Result};
use crate::padic::{
    inverse_mod, pow, reduce, sylvester_resultant, val_exponent, Certified, IntPoly, TruncatedInt,
    Valuation,
};

/// Additive and multiplicative operations accepted by [`ext_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
}

/// The ring of integers `O_L = Z_p[x]/(f)` of the extension cut out by an
/// Eisenstein polynomial `f`. The class of `x` is the uniformizer `pi`.
///
/// Cloning is cheap; elements keep a handle to their ring.
#[derive(Clone)]
pub struct ExtRing(Arc<RingInner>);

struct RingInner {
    f: EisensteinPoly,
    /// Coordinates of the unit `pi^e / p`.
    eps: Vec<BigInt>,
}

impl ExtRing {
    pub fn new(f: &EisensteinPoly) -> Self {
        let p = BigInt::from(f.p());
        let eps = f.tail().iter().map(|a| -(a / &p)).collect();
        ExtRing(Arc::new(RingInner { f: f.clone(), eps }))
    }

    pub fn poly(&self) -> &EisensteinPoly {
        &self.0.f
    }

    pub fn p(&self) -> u64 {
        self.0.f.p()
    }

    pub fn degree(&self) -> usize {
        self.0.f.degree()
    }

    fn same(&self, other: &ExtRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.f == other.0.f
    }

    /// The element `sum c_i pi^i`; missing coordinates are zero.
    pub fn element(&self, coords: &[BigInt], prec: u32) -> ExtElement {
        assert!(coords.len() <= self.degree(), "too many coordinates");
        let modulus = pow(self.p(), prec);
        let mut c: Vec<BigInt> = coords.iter().map(|x| reduce(x, &modulus)).collect();
        c.resize(self.degree(), BigInt::zero());
        ExtElement {
            ring: self.clone(),
            coords: c,
            prec,
            modulus,
        }
    }

    pub fn scalar(&self, c: &BigInt, prec: u32) -> ExtElement {
        self.element(core::slice::from_ref(c), prec)
    }

    pub fn zero(&self, prec: u32) -> ExtElement {
        self.element(&[], prec)
    }

    pub fn one(&self, prec: u32) -> ExtElement {
        self.scalar(&BigInt::one(), prec)
    }

    pub fn pi(&self, prec: u32) -> ExtElement {
        if self.degree() == 1 {
            return self.scalar(&-&self.0.f.tail()[0], prec);
        }
        self.element(&[BigInt::zero(), BigInt::one()], prec)
    }

    pub fn pi_pow(&self, k: u32, prec: u32) -> ExtElement {
        self.pi(prec).pow(k)
    }

    fn eps(&self, prec: u32) -> ExtElement {
        self.element(&self.0.eps, prec)
    }

    /// `h(x)` by Horner's rule.
    pub fn eval(&self, h: &IntPoly, x: &ExtElement) -> ExtElement {
        let mut acc = self.zero(x.prec);
        for c in h.coeffs().iter().rev() {
            acc = &(&acc * x) + &self.scalar(c, x.prec);
        }
        acc
    }
}

impl fmt::Debug for ExtRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O_K[x]/({})", self.0.f)
    }
}

/// An element `sum_{i<e} c_i pi^i` of `O_L`, each `c_i` known modulo `p^prec`.
///
/// Since `O_L / p^N O_L = (Z/p^N)[x]/(f)`, addition and multiplication are
/// exact at the common precision; only division by `pi` costs digits.
#[derive(Clone)]
pub struct ExtElement {
    ring: ExtRing,
    coords: Vec<BigInt>,
    prec: u32,
    modulus: BigInt,
}

impl ExtElement {
    pub fn ring(&self) -> &ExtRing {
        &self.ring
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Raw coordinates in `[0, p^prec)`.
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> TruncatedInt {
        TruncatedInt::new(&self.coords[i], self.ring.p(), self.prec)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The same representative at another precision. Raising the precision
    /// pads with zero digits, i.e. treats the representative as exact.
    pub fn with_precision(&self, prec: u32) -> ExtElement {
        self.ring.element(&self.coords, prec)
    }

    /// Residue class in `O_L / pi = F_p`.
    pub fn residue(&self) -> u64 {
        let p = BigInt::from(self.ring.p());
        let r = reduce(&self.coords[0], &p);
        u64::try_from(&r).unwrap_or(0)
    }

    /// Valuation normalized so `v(p) = 1`, or `>= prec` if zero at precision.
    ///
    /// Candidates `v_p(c_i) + i/e` have distinct fractional parts, so the
    /// minimum is attained once and is the true valuation.
    pub fn val_cert(&self) -> Certified {
        let e = self.ring.degree() as i64;
        self.coords
            .iter()
            .enumerate()
            .filter_map(|(i, c)| {
                val_exponent(c, self.ring.p()).map(|v| Rational64::new(v as i64 * e + i as i64, e))
            })
            .min()
            .map_or(
                Certified::AtLeast(Rational64::from_integer(self.prec as i64)),
                Certified::Exact,
            )
    }

    /// Certified valuation; errors if the element vanishes at its precision.
    pub fn val(&self) -> Result<Valuation> {
        match self.val_cert() {
            Certified::Exact(q) => Ok(Valuation::Finite(q)),
            Certified::AtLeast(_) => Err(Error::precision(
                "element vanishes at its working precision",
            )),
        }
    }

    fn check(&self, other: &ExtElement) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::MixedExtensions)
        }
    }

    fn lower(&self, other: &ExtElement) -> (u32, BigInt) {
        if self.prec <= other.prec {
            (self.prec, self.modulus.clone())
        } else {
            (other.prec, other.modulus.clone())
        }
    }

    fn build(&self, coords: Vec<BigInt>, prec: u32, modulus: BigInt) -> ExtElement {
        let coords = coords.iter().map(|c| reduce(c, &modulus)).collect();
        ExtElement {
            ring: self.ring.clone(),
            coords,
            prec,
            modulus,
        }
    }

    pub fn checked_add(&self, other: &ExtElement) -> Result<ExtElement> {
        self.check(other)?;
        let (prec, m) = self.lower(other);
        let c = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(self.build(c, prec, m))
    }

    pub fn checked_sub(&self, other: &ExtElement) -> Result<ExtElement> {
        self.check(other)?;
        let (prec, m) = self.lower(other);
        let c = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Ok(self.build(c, prec, m))
    }

    /// Product reduced with `X^e = -(a_{e-1} X^{e-1} + ... + a_0)`.
    pub fn checked_mul(&self, other: &ExtElement) -> Result<ExtElement> {
        self.check(other)?;
        let (prec, m) = self.lower(other);
        let e = self.ring.degree();
        let mut prod = vec![BigInt::zero(); 2 * e - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        let tail = self.ring.poly().tail();
        for k in (e..2 * e - 1).rev() {
            let top = reduce(&core::mem::take(&mut prod[k]), &m);
            if top.is_zero() {
                continue;
            }
            for (i, a) in tail.iter().enumerate() {
                prod[k - e + i] -= &top * a;
            }
        }
        prod.truncate(e);
        Ok(self.build(prod, prec, m))
    }

    pub fn scale(&self, c: &BigInt) -> ExtElement {
        let coords = self.coords.iter().map(|x| x * c).collect();
        self.build(coords, self.prec, self.modulus.clone())
    }

    pub fn pow(&self, mut n: u32) -> ExtElement {
        let mut base = self.clone();
        let mut acc = self.ring.one(self.prec);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn div_p_pow(&self, k: u32) -> Result<ExtElement> {
        if k == 0 {
            return Ok(self.clone());
        }
        if k >= self.prec {
            return Err(Error::precision(
                "division by p exhausts the available digits",
            ));
        }
        let m = pow(self.ring.p(), k);
        let mut coords = Vec::with_capacity(self.coords.len());
        for c in &self.coords {
            if !(c % &m).is_zero() {
                return Err(Error::NotDivisible);
            }
            coords.push(c / &m);
        }
        let prec = self.prec - k;
        Ok(self.build(coords, prec, pow(self.ring.p(), prec)))
    }

    /// Exact quotient by `pi^s`. Uses `pi^e = p * eps` with `eps` a unit, so the
    /// cost is about `s/e + 1` digits of precision.
    pub fn div_pi_pow(&self, s: u32) -> Result<ExtElement> {
        if s == 0 {
            return Ok(self.clone());
        }
        let e = self.ring.degree() as u32;
        let (q, r) = (s / e, s % e);
        let mut z = self.div_p_pow(q)?;
        let mut eps_power = q;
        if r > 0 {
            z = (&z * &self.ring.pi_pow(e - r, z.prec)).div_p_pow(1)?;
            eps_power += 1;
        }
        let inv = self.ring.eps(z.prec).unit_inverse()?;
        Ok(&z * &inv.pow(eps_power))
    }

    /// Inverse of a unit by Newton iteration `z <- z (2 - w z)`.
    pub fn unit_inverse(&self) -> Result<ExtElement> {
        let c0 = inverse_mod(&self.coords[0], &self.modulus).ok_or_else(|| {
            if self.is_zero() {
                Error::precision("cannot invert an element that vanishes at its precision")
            } else {
                Error::NonUnit
            }
        })?;
        let one = self.ring.one(self.prec);
        let mut z = self.ring.scalar(&c0, self.prec);
        // Each step doubles the pi-adic accuracy; 2^64 digits is far beyond any precision.
        for _ in 0..64 {
            let defect = &one - &(self * &z);
            if defect.is_zero() {
                return Ok(z);
            }
            z = &z + &(&z * &defect);
        }
        Err(Error::inconsistent(
            "unit inverse iteration did not converge",
        ))
    }

    /// `self / y` when the quotient is integral.
    pub fn div_exact(&self, y: &ExtElement) -> Result<ExtElement> {
        self.check(y)?;
        let vy = y.val()?.finite().unwrap_or_default();
        let s = vy * Rational64::from_integer(self.ring.degree() as i64);
        debug_assert!(s.is_integer());
        let s = *s.numer() as u32;
        let num = self.div_pi_pow(s)?;
        let den = y.div_pi_pow(s)?;
        Ok(&num * &den.unit_inverse()?)
    }

    /// `N_{L/K}(x) = Res(f, x(X))`, the product of `x` over all conjugates.
    pub fn norm(&self) -> TruncatedInt {
        let f = self.ring.poly().to_poly();
        let r = sylvester_resultant(f.coeffs(), &self.coords);
        TruncatedInt::new(&r, self.ring.p(), self.prec)
    }
}

/// The quotient-ring operation `x op y`, rejecting operands from different rings.
pub fn ext_arith(x: &ExtElement, y: &ExtElement, op: ArithOp) -> Result<ExtElement> {
    match op {
        ArithOp::Add => x.checked_add(y),
        ArithOp::Mul => x.checked_mul(y),
    }
}

/// Valuation of an extension element; see [`ExtElement::val`].
pub fn ext_val(x: &ExtElement) -> Result<Valuation> {
    x.val()
}

impl PartialEq for ExtElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.prec == other.prec && self.coords == other.coords
    }
}

impl Eq for ExtElement {}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod p^{})", self, self.prec)
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", c)?;
        }
        f.write_str("]")
    }
}

// Operator forms panic on mixed rings; use the `checked_*` methods or
// `ext_arith` at API boundaries.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a ExtElement> for &'a ExtElement {
            type Output = ExtElement;

            fn $method(self, rhs: &'a ExtElement) -> ExtElement {
                self.$checked(rhs)
                    .expect("operands from different extension rings")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &ExtElement {
    type Output = ExtElement;

    fn neg(self) -> ExtElement {
        self.scale(&BigInt::from(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(p: u64, tail: &[i64]) -> ExtRing {
        ExtRing::new(&EisensteinPoly::from_i64(p, tail).unwrap())
    }

    fn el(r: &ExtRing, c: &[i64], prec: u32) -> ExtElement {
        r.element(
            &c.iter().copied().map(BigInt::from).collect::<Vec<_>>(),
            prec,
        )
    }

    #[test]
    fn quadratic_arithmetic() {
        let r = ring(3, &[-3, 0]);
        let pi = r.pi(20);
        assert_eq!(&pi * &pi, el(&r, &[3], 20));
        let a = el(&r, &[1, 1], 20);
        let b = el(&r, &[1, -1], 20);
        assert_eq!(&a * &b, el(&r, &[-2], 20));
        assert_eq!(&a + &r.zero(20), a);
    }

    #[test]
    fn valuation_examples() {
        let r = ring(3, &[-3, 0]);
        let q = |n, d| Valuation::frac(n, d);
        assert_eq!(r.pi(20).val().unwrap(), q(1, 2));
        assert_eq!(el(&r, &[3], 20).val().unwrap(), q(1, 1));
        assert_eq!(el(&r, &[3, 1], 20).val().unwrap(), q(1, 2));
        assert!(matches!(
            el(&r, &[81], 4).val(),
            Err(Error::InsufficientPrecision(_))
        ));
    }

    #[test]
    fn norm_examples() {
        let r = ring(3, &[-3, 0]);
        assert_eq!(r.pi(20).norm(), TruncatedInt::from_i64(-3, 3, 20));
        assert_eq!(
            el(&r, &[1, 1], 20).norm(),
            TruncatedInt::from_i64(-2, 3, 20)
        );
        let c = el(&r, &[7], 20);
        assert_eq!(c.norm(), TruncatedInt::from_i64(49, 3, 20));
        let cubic = ring(2, &[2, 2, 4]);
        assert_eq!(cubic.pi(20).norm(), TruncatedInt::from_i64(-2, 2, 20));
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = ring(3, &[-3, 0]).pi(10);
        let b = ring(3, &[3, 3]).pi(10);
        assert_eq!(ext_arith(&a, &b, ArithOp::Add), Err(Error::MixedExtensions));
        assert_eq!(ext_arith(&a, &b, ArithOp::Mul), Err(Error::MixedExtensions));
    }

    #[test]
    fn division_by_uniformizer_powers() {
        let r = ring(2, &[2, 2, 4]);
        let pi = r.pi(30);
        let u = el(&r, &[3, 1, 5], 30);
        for s in 0..9 {
            let x = &u * &pi.pow(s);
            let q = x.div_pi_pow(s).unwrap();
            assert_eq!(q, u.with_precision(q.precision()), "s = {s}");
            assert!(q.precision() + s / 3 + 1 >= 30);
        }
        assert_eq!(el(&r, &[1], 10).div_pi_pow(1), Err(Error::NotDivisible));
    }

    #[test]
    fn unit_inverse_and_exact_division() {
        let r = ring(5, &[5, 10, 0, 15]);
        let u = el(&r, &[2, 7, 1, 3], 25);
        let inv = u.unit_inverse().unwrap();
        assert_eq!(&u * &inv, r.one(25));
        assert_eq!(r.pi(25).unit_inverse(), Err(Error::NonUnit));
        let y = &r.pi_pow(3, 25) * &u;
        let x = &y * &el(&r, &[4, 4], 25);
        let q = x.div_exact(&y).unwrap();
        assert_eq!(q, el(&r, &[4, 4], q.precision()));
    }

    fn arb_element(r: ExtRing, prec: u32) -> impl Strategy<Value = ExtElement> {
        let e = r.degree();
        prop::collection::vec(-10_000i64..10_000, e).prop_map(move |c| el(&r, &c, prec))
    }

    fn arb_ring() -> impl Strategy<Value = ExtRing> {
        prop::sample::select(vec![
            (2u64, vec![-2i64, 0]),
            (2, vec![2, 2, 4]),
            (3, vec![3, 3]),
            (3, vec![3, 0, 9]),
            (5, vec![5, 10, 0, 15]),
        ])
        .prop_map(|(p, t)| ring(p, &t))
    }

    fn arb_pair() -> impl Strategy<Value = (ExtElement, ExtElement)> {
        arb_ring().prop_flat_map(|r| (arb_element(r.clone(), 40), arb_element(r, 40)))
    }

    proptest! {
        #[test]
        fn valuation_is_multiplicative_and_ultrametric((x, y) in arb_pair()) {
            if let (Certified::Exact(a), Certified::Exact(b)) = (x.val_cert(), y.val_cert()) {
                prop_assert_eq!((&x * &y).val_cert(), Certified::Exact(a + b));
                if let Some(s) = (&x + &y).val_cert().exact() {
                    prop_assert!(s >= a.min(b));
                    if a != b {
                        prop_assert_eq!(s, a.min(b));
                    }
                }
            }
        }

        #[test]
        fn norm_is_multiplicative((x, y) in arb_pair()) {
            prop_assert_eq!((&x * &y).norm(), x.norm().mul(&y.norm()));
        }

        #[test]
        fn ring_axioms((x, y) in arb_pair()) {
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            prop_assert_eq!(&x * &(&y + &x), &(&x * &y) + &(&x * &x));
        }
    }
}
