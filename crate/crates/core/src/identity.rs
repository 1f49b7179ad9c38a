//! Deciding whether two Eisenstein polynomials define the same extension.
//!
//! With `u` the largest upper break of `L = K(pi_f)` and `d = v(f, g)`:
//!
//! * `d > u` forces `L = M_g` (Krasner's lemma via `phi`);
//! * `d = u - 1/e` forces `L != M_g`, because the closest conjugate would sit at
//!   a non-integral `v_L`-distance;
//! * everything else, including `d = u` itself, can go either way and is
//!   settled by looking for a root of `f` in `O_K[x]/(g)`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::One;

use crate::error::{Error, Result};
use crate::extension::{EisensteinPoly, ExtElement, ExtRing};
use crate::metric::{distance_e, Distance};
use crate::padic::{pow, BaseField, Valuation};
use crate::ramification::{ramification_data, RamificationData};

type Q = Rational64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Same,
    Different,
    Unknown,
}

/// Why a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    /// `v(f, g) > u`.
    KrasnerBound,
    /// `v(f, g) = u - 1/e`.
    BreakGap,
    /// `f` has a root in `O_K[x]/(g)`.
    OracleRoots,
    /// Exhaustive branching found no root of `f` in `O_K[x]/(g)`.
    OracleNoRoots,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A verdict with its supporting data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionOutcome {
    pub verdict: Verdict,
    /// `None` exactly when the verdict is `Unknown`.
    pub reason: Option<Reason>,
    pub distance: Distance,
    pub u_break: Q,
    /// A root of `f` in `O_K[x]/(g)`, for `OracleRoots`.
    pub root: Option<ExtElement>,
    /// Working precision of the root search, for oracle verdicts.
    pub oracle_precision: Option<u32>,
}

impl DecisionOutcome {
    fn new(verdict: Verdict, reason: Option<Reason>, distance: Distance, u_break: Q) -> Self {
        DecisionOutcome {
            verdict,
            reason,
            distance,
            u_break,
            root: None,
            oracle_precision: None,
        }
    }
}

/// The ramification-only decision. Never consults the oracle.
pub fn decide_with(rd: &RamificationData, g: &EisensteinPoly) -> Result<DecisionOutcome> {
    let f = rd.poly();
    let d = distance_e(f, g)?;
    let u = rd.u_break();
    let gap = u - Q::new(1, f.degree() as i64);
    let (verdict, reason) = if d.value() > u {
        (Verdict::Same, Some(Reason::KrasnerBound))
    } else if d.value() == gap {
        (Verdict::Different, Some(Reason::BreakGap))
    } else {
        (Verdict::Unknown, None)
    };
    Ok(DecisionOutcome::new(verdict, reason, d, u))
}

/// [`decide_with`] after computing the ramification data of `f`.
pub fn decide(f: &EisensteinPoly, g: &EisensteinPoly) -> Result<DecisionOutcome> {
    decide_with(&ramification_data(f)?, g)
}

/// A root of `f` in `O_K[x]/(g)`, if any. Since `f` and `g` are irreducible of
/// the same degree, this decides `K(pi_f) = K(pi_g)` without Galois hypotheses.
pub fn oracle_root(
    f: &EisensteinPoly,
    g: &EisensteinPoly,
    prec: u32,
) -> Result<Option<ExtElement>> {
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
    let mut roots = ExtRing::new(g).roots_of(&f.to_poly(), prec)?;
    Ok(if roots.is_empty() {
        None
    } else {
        Some(roots.swap_remove(0))
    })
}

/// Oracle-only verdict, never `Unknown`. Runs the root search even when the
/// ramification bounds would already decide, so it can audit [`decide_with`].
pub fn decide_with_oracle_at(
    rd: &RamificationData,
    g: &EisensteinPoly,
    prec: u32,
) -> Result<DecisionOutcome> {
    let f = rd.poly();
    let d = distance_e(f, g)?;
    let root = oracle_root(f, g, prec)?;
    let (verdict, reason) = match root {
        Some(_) => (Verdict::Same, Reason::OracleRoots),
        None => (Verdict::Different, Reason::OracleNoRoots),
    };
    let mut out = DecisionOutcome::new(verdict, Some(reason), d, rd.u_break());
    out.root = root;
    out.oracle_precision = Some(prec);
    Ok(out)
}

pub fn decide_with_oracle(f: &EisensteinPoly, g: &EisensteinPoly) -> Result<DecisionOutcome> {
    let rd = ramification_data(f)?;
    decide_with_oracle_at(&rd, g, BaseField::default_precision(f.degree()))
}

/// A `g` with `v(f, g) = u - 1/e` exactly, obtained by perturbing the single
/// coefficient `a_i` with `i = e u - 1 mod e` by `p^delta`, where
/// `delta = (e u - 1 - i)/e`. Such a `g` never defines `L`.
pub fn wild_counterexample(rd: &RamificationData) -> Result<EisensteinPoly> {
    let f = rd.poly();
    let e = f.degree() as i64;
    let target = rd.u_break() * Q::from_integer(e) - Q::one();
    debug_assert!(target.is_integer());
    let target = target.to_integer();
    let i = target.rem_euclid(e);
    let delta = (target - i) / e;
    if f.is_tame() {
        return Err(Error::NotConstructible(format!(
            "{} is tamely ramified; distance u - 1/e < 1 is unreachable",
            f
        )));
    }
    if delta < 1 {
        return Err(Error::NotConstructible(format!(
            "perturbation exponent {} < 1",
            delta
        )));
    }
    let i = i as usize;
    let b = f.coeff(i) + pow(f.p(), delta as u32);
    let g = f.with_coeff(i, b).map_err(|_| {
        Error::NotConstructible(format!(
            "perturbing a_{} breaks the Eisenstein condition",
            i
        ))
    })?;
    let d = distance_e(f, &g)?;
    if d.value() != target_distance(rd) {
        return Err(Error::inconsistent(format!(
            "constructed distance {} differs from u - 1/e",
            d
        )));
    }
    Ok(g)
}

fn target_distance(rd: &RamificationData) -> Valuation {
    Valuation::Finite(rd.u_break() - Q::new(1, rd.degree() as i64))
}

/// The integer upper break `m`, or an error.
fn integer_break(rd: &RamificationData) -> Result<i64> {
    let u = rd.u_break();
    if !u.is_integer() {
        return Err(Error::NonIntegerBreak(format!("{}", u)));
    }
    let m = u.to_integer();
    if m < 1 {
        return Err(Error::NotConstructible(
            "trivial extension has no break".into(),
        ));
    }
    Ok(m)
}

/// Residue classes `c` that parametrize `U^{m-1} \ U^m`: `c = 1..p-1` for
/// `m >= 2`, and `c = 2..p-1` for `m = 1` where the class must avoid `U^1`.
pub fn unit_classes(rd: &RamificationData) -> Result<Vec<u64>> {
    let m = integer_break(rd)?;
    let start = if m == 1 { 2 } else { 1 };
    Ok((start..rd.poly().p()).collect())
}

/// `g_u = X^e + a_{e-1} X^{e-1} + ... + a_1 X + u a_0` with `u` in `U^{m-1} \ U^m`
/// for the integer break `m`: `u = 1 + c p^{m-1}` when `m >= 2`, and `u = c`
/// when `m = 1`. By construction `v(f, g_u) = m`.
pub fn gu_family(rd: &RamificationData, c: u64) -> Result<EisensteinPoly> {
    let f = rd.poly();
    let p = f.p();
    let m = integer_break(rd)?;
    let unit = if m == 1 {
        if c % p <= 1 {
            return Err(Error::BadUnitClass { c });
        }
        BigInt::from(c)
    } else {
        if c.is_multiple_of(p) {
            return Err(Error::BadUnitClass { c });
        }
        BigInt::one() + BigInt::from(c) * pow(p, (m - 1) as u32)
    };
    f.with_coeff(0, f.coeff(0) * unit)
}

/// Result of probing the property at `m = u` with the `g_u` family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreakCheck {
    /// True iff every `g_u` defines `L`.
    pub holds: bool,
    pub u_break: Q,
    /// `(c, g_u, oracle verdict)` for every unit class.
    pub probes: Vec<(u64, EisensteinPoly, DecisionOutcome)>,
}

impl BreakCheck {
    /// First probe whose extension differs from `L`.
    pub fn witness(&self) -> Option<&(u64, EisensteinPoly, DecisionOutcome)> {
        self.probes
            .iter()
            .find(|(_, _, o)| o.verdict == Verdict::Different)
    }
}

/// Sweeps the `g_u` family at distance exactly `u` and oracle-decides each.
/// Over `Q_p` the residue field is finite, so a `Different` witness must exist.
pub fn tbreak_check_at(rd: &RamificationData, prec: u32) -> Result<BreakCheck> {
    let mut probes = Vec::new();
    for c in unit_classes(rd)? {
        let g = gu_family(rd, c)?;
        let outcome = decide_with_oracle_at(rd, &g, prec)?;
        if outcome.distance.value() != Valuation::Finite(rd.u_break()) {
            return Err(Error::inconsistent(format!(
                "g_u for c = {} sits at distance {}",
                c, outcome.distance
            )));
        }
        probes.push((c, g, outcome));
    }
    Ok(BreakCheck {
        holds: probes.iter().all(|(_, _, o)| o.verdict == Verdict::Same),
        u_break: rd.u_break(),
        probes,
    })
}

pub fn tbreak_check(f: &EisensteinPoly) -> Result<BreakCheck> {
    let rd = ramification_data(f)?;
    tbreak_check_at(&rd, BaseField::default_precision(f.degree()))
}

/// Runs `op` at `prec`, retrying at doubled precision while it reports
/// `InsufficientPrecision`, at most `retries` times.
pub fn with_precision_retry<T>(
    prec: u32,
    retries: u32,
    mut op: impl FnMut(u32) -> Result<T>,
) -> Result<T> {
    let mut prec = prec;
    let mut left = retries;
    loop {
        match op(prec) {
            Err(Error::InsufficientPrecision(_)) if left > 0 => {
                left -= 1;
                prec *= 2;
            }
            other => return other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eis(p: u64, tail: &[i64]) -> EisensteinPoly {
        EisensteinPoly::from_i64(p, tail).unwrap()
    }

    #[test]
    fn decide_examples() {
        let f = eis(2, &[-2, 0]);
        let o = decide(&f, &eis(2, &[-18, 0])).unwrap();
        assert_eq!(
            (o.verdict, o.reason),
            (Verdict::Same, Some(Reason::KrasnerBound))
        );
        assert_eq!(o.distance.value(), Valuation::int(4));

        let o = decide(&f, &eis(2, &[-2, 4])).unwrap();
        assert_eq!(
            (o.verdict, o.reason),
            (Verdict::Different, Some(Reason::BreakGap))
        );
        assert_eq!(o.distance.value(), Valuation::frac(5, 2));

        let o = decide(&f, &eis(2, &[-10, 0])).unwrap();
        assert_eq!((o.verdict, o.reason), (Verdict::Unknown, None));
        assert_eq!(o.distance.value(), Valuation::int(3));
    }

    #[test]
    fn oracle_examples() {
        let f = eis(2, &[-2, 0]);
        let o = decide_with_oracle(&f, &f).unwrap();
        assert_eq!(o.verdict, Verdict::Same);
        let o = decide_with_oracle(&f, &eis(2, &[-10, 0])).unwrap();
        assert_eq!(
            (o.verdict, o.reason),
            (Verdict::Different, Some(Reason::OracleNoRoots))
        );
        let o = decide_with_oracle(&eis(3, &[-3, 0]), &eis(3, &[-12, 0])).unwrap();
        assert_eq!(
            (o.verdict, o.reason),
            (Verdict::Same, Some(Reason::OracleRoots))
        );
        assert_eq!(o.distance.value(), Valuation::int(2));
        assert!(o.root.is_some());
    }

    #[test]
    fn not_galois_rejected() {
        let f = eis(3, &[-3, 0, 0]);
        assert!(matches!(decide(&f, &f), Err(Error::NotGalois { .. })));
    }

    #[test]
    fn counterexamples() {
        let rd = ramification_data(&eis(2, &[-2, 0])).unwrap();
        assert_eq!(wild_counterexample(&rd).unwrap(), eis(2, &[-2, 4]));
        let rd = ramification_data(&eis(2, &[-6, 0])).unwrap();
        assert_eq!(wild_counterexample(&rd).unwrap(), eis(2, &[-6, 4]));
        let rd = ramification_data(&eis(3, &[-3, 0])).unwrap();
        assert!(matches!(
            wild_counterexample(&rd),
            Err(Error::NotConstructible(_))
        ));
    }

    #[test]
    fn gu_examples() {
        let rd = ramification_data(&eis(2, &[-2, 0])).unwrap();
        assert_eq!(gu_family(&rd, 1).unwrap(), eis(2, &[-10, 0]));
        assert_eq!(gu_family(&rd, 0), Err(Error::BadUnitClass { c: 0 }));
        let rd = ramification_data(&eis(3, &[-3, 0])).unwrap();
        assert_eq!(gu_family(&rd, 2).unwrap(), eis(3, &[-6, 0]));
        assert_eq!(gu_family(&rd, 1), Err(Error::BadUnitClass { c: 1 }));
        assert_eq!(unit_classes(&rd).unwrap(), alloc::vec![2]);
    }

    #[test]
    fn break_check_fails_over_qp() {
        let b = tbreak_check(&eis(2, &[-2, 0])).unwrap();
        assert!(!b.holds);
        assert_eq!(b.witness().unwrap().1, eis(2, &[-10, 0]));
        let b = tbreak_check(&eis(3, &[-3, 0])).unwrap();
        assert!(!b.holds);
        assert_eq!(b.witness().unwrap().1, eis(3, &[-6, 0]));
        let b = tbreak_check(&eis(3, &[3, 3])).unwrap();
        assert!(!b.holds);
    }

    #[test]
    fn retry_doubles() {
        let mut seen = Vec::new();
        let r: Result<u32> = with_precision_retry(8, 2, |p| {
            seen.push(p);
            Err(Error::precision("x"))
        });
        assert!(r.is_err());
        assert_eq!(seen, alloc::vec![8, 16, 32]);
    }
}
