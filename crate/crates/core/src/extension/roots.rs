use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::Rational64;

use super::{EisensteinPoly, ExtElement, ExtRing};
use crate::error::{Error, Result};
use crate::padic::{sylvester_resultant, val_exponent, Certified, IntPoly};

/// Newton steps allowed once a branch is in the Hensel regime. Convergence is
/// quadratic, so this only trips on a logic error.
const MAX_NEWTON_STEPS: usize = 200;

impl ExtRing {
    /// All roots of the monic polynomial `h` in `O_L`, each to `prec` digits.
    ///
    /// Branches over residue classes modulo `pi^k`, pruning a class as soon as
    /// `v(h(a)) < k/e`, and hands a class to Newton iteration once
    /// `v(h(a)) > 2 v(h'(a))` with `k/e > v(h'(a))`, which pins down at most
    /// one root in the class. Internally works with `v_p(disc h) + 2` guard
    /// digits, which bounds `v(h'(r))` at every root.
    pub fn roots_of(&self, h: &IntPoly, prec: u32) -> Result<Vec<ExtElement>> {
        if prec == 0 {
            return Err(Error::ZeroPrecision);
        }
        if !h.is_monic() {
            return Err(Error::NotMonic);
        }
        if h.degree().unwrap_or(0) == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let dh = h.derivative();
        let disc = sylvester_resultant(h.coeffs(), dh.coeffs());
        let Some(disc_val) = val_exponent(&disc, self.p()) else {
            return Err(Error::UnsupportedMultipleRoot);
        };
        let work = prec + disc_val as u32 + 2;
        let e = self.degree() as i64;
        let max_level = work * self.degree() as u32;

        let mut pi_powers = alloc::vec![self.one(work)];
        let pi = self.pi(work);
        let mut roots = Vec::new();
        let mut queue = VecDeque::from([(self.zero(work), 0u32)]);

        while let Some((a, level)) = queue.pop_front() {
            let radius = Rational64::new(level as i64, e);
            let ha = self.eval(h, &a).val_cert();
            if ha.at_least(radius) == Some(false) {
                continue;
            }
            if let Certified::Exact(d) = self.eval(&dh, &a).val_cert() {
                let hensel = ha.at_least(d * 2 + Rational64::new(1, e)) == Some(true);
                if hensel && radius > d {
                    let r = self.newton(h, &dh, a.clone(), work)?;
                    if (&r - &a).val_cert().at_least(radius) == Some(true) {
                        let r = r.with_precision(prec);
                        if self
                            .eval(h, &r)
                            .val_cert()
                            .at_least(Rational64::from_integer(prec as i64))
                            != Some(true)
                        {
                            return Err(Error::precision(format!(
                                "root of {} not resolved to {} digits",
                                h, prec
                            )));
                        }
                        roots.push(r);
                    }
                    continue;
                }
            }
            if level >= max_level {
                return Err(Error::precision(format!(
                    "root branches of {} not separated at {} digits",
                    h, work
                )));
            }
            while pi_powers.len() <= level as usize {
                let next = pi_powers.last().unwrap() * &pi;
                pi_powers.push(next);
            }
            let step = &pi_powers[level as usize];
            for t in 0..self.p() {
                let child = if t == 0 {
                    a.clone()
                } else {
                    &a + &step.scale(&BigInt::from(t))
                };
                queue.push_back((child, level + 1));
            }
        }
        Ok(roots)
    }

    fn newton(
        &self,
        h: &IntPoly,
        dh: &IntPoly,
        mut r: ExtElement,
        work: u32,
    ) -> Result<ExtElement> {
        for _ in 0..MAX_NEWTON_STEPS {
            let hr = self.eval(h, &r);
            if hr.is_zero() {
                return Ok(r);
            }
            let delta = hr.div_exact(&self.eval(dh, &r))?;
            // The quotient carries fewer digits than `work`; once it vanishes
            // there, `r` is as accurate as this precision allows.
            if delta.is_zero() {
                return Ok(r);
            }
            r = &r - &delta.with_precision(work);
        }
        Err(Error::inconsistent("Newton iteration did not converge"))
    }
}

/// Roots of `h` in the extension defined by `f`, to `prec` digits.
pub fn roots_of(h: &IntPoly, f: &EisensteinPoly, prec: u32) -> Result<Vec<ExtElement>> {
    ExtRing::new(f).roots_of(h, prec)
}
