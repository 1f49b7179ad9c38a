use alloc::vec::Vec;

use super::{EisensteinPoly, ExtElement, ExtRing};
use crate::error::Result;

/// Outcome of the Galois test for `K(pi)/K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GaloisCheck {
    /// All `e` conjugates `sigma(pi)` lie in `O_L`; `pi` itself is first.
    Galois(Vec<ExtElement>),
    /// Only this many roots of `f` lie in `O_L`.
    NotGalois(usize),
}

impl GaloisCheck {
    pub fn is_galois(&self) -> bool {
        matches!(self, GaloisCheck::Galois(_))
    }
}

/// `K(pi)/K` is Galois iff `f` splits in `O_K[x]/(f)`.
pub fn galois_check(f: &EisensteinPoly, prec: u32) -> Result<GaloisCheck> {
    let ring = ExtRing::new(f);
    let mut roots = ring.roots_of(&f.to_poly(), prec)?;
    if roots.len() < f.degree() {
        return Ok(GaloisCheck::NotGalois(roots.len()));
    }
    let pi = ring.pi(prec);
    if let Some(idx) = roots.iter().position(|r| (r - &pi).is_zero()) {
        roots.swap(0, idx);
    }
    Ok(GaloisCheck::Galois(roots))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eis(p: u64, tail: &[i64]) -> EisensteinPoly {
        EisensteinPoly::from_i64(p, tail).unwrap()
    }

    #[test]
    fn quadratics_are_galois() {
        let f = eis(2, &[-2, 0]);
        match galois_check(&f, 64).unwrap() {
            GaloisCheck::Galois(c) => {
                let pi = ExtRing::new(&f).pi(64);
                assert_eq!(c[0], pi);
                assert_eq!(c[1], -&pi);
            }
            other => panic!("{other:?}"),
        }
        assert!(galois_check(&eis(3, &[3, 3]), 64).unwrap().is_galois());
    }

    #[test]
    fn pure_cubic_over_q3_is_not_galois() {
        assert_eq!(
            galois_check(&eis(3, &[-3, 0, 0]), 96).unwrap(),
            GaloisCheck::NotGalois(1)
        );
    }
}
