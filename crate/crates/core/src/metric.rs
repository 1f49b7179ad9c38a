//! The ultrametric on Eisenstein polynomials of a fixed degree, and the
//! resultant metric on monic polynomials it refines.
//!
//! For `f, g` Eisenstein of degree `e`,
//!
//! ```text
//! v(f, g) = min_i { v_p(a_i - b_i) + i/e } = v_p(Res(f, g)) / e = v(f(pi_g))
//! ```
//!
//! The coefficient formula is exact and linear in `e`; the resultant route is
//! kept as an independent check and runs alongside it in debug builds.

use core::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::extension::{EisensteinPoly, ExtRing};
use crate::padic::{resultant, val_int, IntPoly, Valuation};

/// `v(f, g)`; larger means closer, `Infinity` for identical polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Distance(pub Valuation);

impl Distance {
    pub fn value(&self) -> Valuation {
        self.0
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn check_compatible(f: &EisensteinPoly, g: &EisensteinPoly) -> Result<()> {
    if f.p() != g.p() {
        return Err(Error::PrimeMismatch {
            left: f.p(),
            right: g.p(),
        });
    }
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            left: f.degree(),
            right: g.degree(),
        });
    }
    Ok(())
}

/// `min_i { v_p(a_i - b_i) + i/e }`.
pub fn distance_coefficients(f: &EisensteinPoly, g: &EisensteinPoly) -> Result<Distance> {
    check_compatible(f, g)?;
    let e = f.degree() as i64;
    let d = f
        .tail()
        .iter()
        .zip(g.tail())
        .enumerate()
        .map(|(i, (a, b))| val_int(&(a - b), f.p()) + Rational64::new(i as i64, e))
        .min()
        .unwrap_or(Valuation::Infinity);
    Ok(Distance(d))
}

/// `v_p(Res(f, g)) / e`.
pub fn distance_resultant(f: &EisensteinPoly, g: &EisensteinPoly) -> Result<Distance> {
    check_compatible(f, g)?;
    let r = resultant(&f.to_poly(), &g.to_poly())?;
    let e = Rational64::from_integer(f.degree() as i64);
    Ok(Distance(match val_int(&r, f.p()) {
        Valuation::Finite(v) => Valuation::Finite(v / e),
        Valuation::Infinity => Valuation::Infinity,
    }))
}

/// `v(f, g)` on `E_K^e`.
///
/// Debug builds also evaluate the resultant route and report any
/// disagreement as [`Error::Inconsistent`].
pub fn distance_e(f: &EisensteinPoly, g: &EisensteinPoly) -> Result<Distance> {
    let d = distance_coefficients(f, g)?;
    if cfg!(debug_assertions) {
        let r = distance_resultant(f, g)?;
        if r != d {
            return Err(Error::inconsistent(alloc::format!(
                "coefficient distance {} but resultant distance {} for {} and {}",
                d,
                r,
                f,
                g
            )));
        }
    }
    Ok(d)
}

/// `v(f(pi_g))` computed by substitution in `O_K[x]/(g)`, to `prec` digits.
pub fn distance_by_substitution(
    f: &EisensteinPoly,
    g: &EisensteinPoly,
    prec: u32,
) -> Result<crate::padic::Certified> {
    check_compatible(f, g)?;
    let ring = ExtRing::new(g);
    Ok(ring.eval(&f.to_poly(), &ring.pi(prec)).val_cert())
}

/// `v_p(Res(f, g))` for monic `f, g`. Irreducibility is the caller's claim.
pub fn distance_p(f: &IntPoly, g: &IntPoly, p: u64) -> Result<Valuation> {
    crate::padic::check_prime(p)?;
    Ok(val_int(&resultant(f, g)?, p))
}
