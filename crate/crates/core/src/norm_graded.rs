//! Graded norm maps `N_n : U_L^{psi(n)} / U_L^{psi(n)+1} -> U_K^n / U_K^{n+1}`
//! and the boundary map `theta_n : G_{psi(n)} / G_{psi(n)+1} -> U_L^{psi(n)} / U_L^{psi(n)+1}`,
//! `sigma -> sigma(pi)/pi`, with `psi` in Serre's numbering.
//!
//! Quotients are coordinatized by `F_p`: at level `l >= 1` the class of
//! `1 + c pi^l` has coordinate `c`, at level 0 a unit has its residue in `F_p^x`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::extension::{EisensteinPoly, ExtElement};
use crate::padic::TruncatedInt;
use crate::ramification::{ramification_data, RamificationData};

type Q = Rational64;

/// `N_n` as a value table together with the image of `theta_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedNormTable {
    pub f: EisensteinPoly,
    pub n: u32,
    /// `psi(n)` in Serre's numbering.
    pub level: u32,
    /// `(c, N_n(c))`; inputs `0..p` at level `>= 1`, `1..p` at level 0.
    pub table: Vec<(u64, u64)>,
    /// `(conjugate index, coordinate of sigma(pi)/pi)` for `sigma` in `G_{psi(n)}`.
    pub theta: Vec<(usize, u64)>,
    /// Indices of the conjugates that lie in `G_{psi(n)+1}`.
    pub deeper: Vec<usize>,
    /// `#G_{psi(n)} / #G_{psi(n)+1}`.
    pub filtration_ratio: u64,
}

impl GradedNormTable {
    fn p(&self) -> u64 {
        self.f.p()
    }

    /// Coordinate of the identity class.
    pub fn neutral(&self) -> u64 {
        if self.level == 0 {
            1
        } else {
            0
        }
    }

    pub fn theta_image(&self) -> Vec<u64> {
        let set: BTreeSet<u64> = self.theta.iter().map(|&(_, c)| c).collect();
        set.into_iter().collect()
    }

    pub fn kernel(&self) -> Vec<u64> {
        let neutral = self.neutral();
        self.table
            .iter()
            .filter(|&&(_, v)| v == neutral)
            .map(|&(c, _)| c)
            .collect()
    }

    pub fn image(&self) -> Vec<u64> {
        let set: BTreeSet<u64> = self.table.iter().map(|&(_, v)| v).collect();
        set.into_iter().collect()
    }

    /// Image of `theta_n` equals the kernel of `N_n`, and `theta_n` is
    /// injective on `G_{psi(n)} / G_{psi(n)+1}`.
    pub fn is_exact(&self) -> bool {
        if self.theta_image() != self.kernel() {
            return false;
        }
        let neutral = self.neutral();
        let trivial_matches = self
            .theta
            .iter()
            .all(|(j, c)| (*c == neutral) == self.deeper.contains(j));
        trivial_matches && self.theta_image().len() as u64 == self.filtration_ratio
    }

    /// Order of the domain-side group `U_K^n / U_K^{n+1}`.
    fn target_order(&self) -> u64 {
        if self.level == 0 {
            self.p() - 1
        } else {
            self.p()
        }
    }

    /// `[U_K^n / U_K^{n+1} : N_n(...)]`.
    pub fn coker_order(&self) -> Result<u64> {
        let total = self.target_order();
        let image = self.image().len() as u64;
        if image == 0 || !total.is_multiple_of(image) {
            return Err(Error::inconsistent(format!(
                "image of size {} in a group of order {}",
                image, total
            )));
        }
        Ok(total / image)
    }

    /// Additive at level `>= 1`, multiplicative at level 0.
    pub fn is_homomorphism(&self) -> bool {
        let p = self.p();
        let get = |c: u64| self.table.iter().find(|&&(x, _)| x == c).map(|&(_, v)| v);
        for &(a, na) in &self.table {
            for &(b, nb) in &self.table {
                let (ab, nab) = if self.level == 0 {
                    (a * b % p, na * nb % p)
                } else {
                    ((a + b) % p, (na + nb) % p)
                };
                if get(ab) != Some(nab) {
                    return false;
                }
            }
        }
        true
    }
}

/// `psi(n)` in Serre's numbering, which must be a nonnegative integer.
pub fn serre_level(rd: &RamificationData, n: u32) -> Result<u32> {
    let l = rd.psi_serre(Q::from_integer(n as i64));
    if !l.is_integer() || l < Q::from_integer(0) {
        return Err(Error::NonIntegerBreak(format!("psi({}) = {}", n, l)));
    }
    l.to_integer()
        .to_u32()
        .ok_or_else(|| Error::NonIntegerBreak(format!("psi({}) = {}", n, l)))
}

/// `#G_l` in Serre's numbering, i.e. `#G_((l+1)/e)`.
fn serre_group_order(rd: &RamificationData, level: u32) -> usize {
    rd.filtration_order(Q::new(level as i64 + 1, rd.degree() as i64))
}

/// `#G_{psi(n)} / #G_{psi(n)+1}`.
pub fn filtration_ratio(rd: &RamificationData, n: u32) -> Result<u64> {
    let l = serre_level(rd, n)?;
    let (a, b) = (serre_group_order(rd, l), serre_group_order(rd, l + 1));
    if a % b != 0 {
        return Err(Error::inconsistent("filtration orders do not divide"));
    }
    Ok((a / b) as u64)
}

/// The `N_n`-coordinate of `N(x)` for `x` in `U_L^{psi(n)}`.
fn norm_coordinate(x: &ExtElement, n: u32, level: u32) -> Result<u64> {
    let p = x.ring().p();
    let nx = x.norm();
    let r = if level == 0 {
        nx.residue().mod_floor(&BigInt::from(p))
    } else {
        let d = nx.sub(&TruncatedInt::new(&BigInt::one(), p, nx.precision()));
        let shifted = d.div_p_pow(n).map_err(|_| {
            Error::inconsistent(format!(
                "norm of a level-{} unit is not in U_K^{}",
                level, n
            ))
        })?;
        shifted.residue().mod_floor(&BigInt::from(p))
    };
    Ok(r.to_u64().unwrap_or(0))
}

/// Level-`l` coordinate of a unit of `O_L` that lies in `U_L^l`.
fn unit_coordinate(x: &ExtElement, level: u32) -> Result<u64> {
    if level == 0 {
        return Ok(x.residue());
    }
    let d = x - &x.ring().one(x.precision());
    let bound = Q::new(level as i64, x.ring().degree() as i64);
    if d.val_cert().at_least(bound) == Some(false) {
        return Err(Error::inconsistent(format!("unit is not in U_L^{}", level)));
    }
    Ok(d.div_pi_pow(level)?.residue())
}

pub fn graded_norm_with(rd: &RamificationData, n: u32) -> Result<GradedNormTable> {
    let f = rd.poly();
    let p = f.p();
    let ring = rd.ring();
    let level = serre_level(rd, n)?;
    let prec = n + 2;

    let mut table = Vec::new();
    if level == 0 {
        for c in 1..p {
            let x = ring.scalar(&BigInt::from(c), prec);
            let y = &ring.scalar(&BigInt::from(c + p), prec) + &ring.pi(prec);
            let (a, b) = (norm_coordinate(&x, n, 0)?, norm_coordinate(&y, n, 0)?);
            if a != b {
                return Err(Error::inconsistent(format!(
                    "N_0 depends on the lift of {}",
                    c
                )));
            }
            table.push((c, a));
        }
    } else {
        let one = ring.one(prec);
        let pl = ring.pi_pow(level, prec);
        let pl1 = ring.pi_pow(level + 1, prec);
        for c in 0..p {
            let x = &one + &pl.scale(&BigInt::from(c));
            let y = &(&one + &pl.scale(&BigInt::from(c + p))) + &pl1;
            let (a, b) = (
                norm_coordinate(&x, n, level)?,
                norm_coordinate(&y, n, level)?,
            );
            if a != b {
                return Err(Error::inconsistent(format!(
                    "N_{} depends on the lift of {}",
                    n, c
                )));
            }
            table.push((c, a));
        }
    }

    let e = rd.degree() as i64;
    let in_group = Q::new(level as i64 + 1, e);
    let in_next = Q::new(level as i64 + 2, e);
    let pi = &rd.conjugates()[0];
    let mut theta = alloc::vec![(0, if level == 0 { 1 } else { 0 })];
    let mut deeper = alloc::vec![0];
    for (j, (sigma_pi, &i)) in rd.conjugates()[1..].iter().zip(rd.orders()).enumerate() {
        let j = j + 1;
        if i < in_group {
            continue;
        }
        if i >= in_next {
            deeper.push(j);
        }
        let q = sigma_pi.div_exact(pi)?;
        theta.push((j, unit_coordinate(&q, level)?));
    }

    let ratio = filtration_ratio(rd, n)?;
    Ok(GradedNormTable {
        f: f.clone(),
        n,
        level,
        table,
        theta,
        deeper,
        filtration_ratio: ratio,
    })
}

pub fn graded_norm(f: &EisensteinPoly, n: u32) -> Result<GradedNormTable> {
    graded_norm_with(&ramification_data(f)?, n)
}

pub fn theta_image(f: &EisensteinPoly, n: u32) -> Result<Vec<u64>> {
    Ok(graded_norm(f, n)?.theta_image())
}

pub fn exactness_check(f: &EisensteinPoly, n: u32) -> Result<bool> {
    Ok(graded_norm(f, n)?.is_exact())
}

pub fn coker_order(f: &EisensteinPoly, n: u32) -> Result<u64> {
    graded_norm(f, n)?.coker_order()
}

/// `N(x)` for `x` in `U_L^{level}`, checked to land in `U_K^n`. Used to
/// sample the filtration containment on arbitrary units.
pub fn norm_lands_in(x: &ExtElement, n: u32) -> Result<bool> {
    let p = x.ring().p();
    let nx = x.norm();
    let d = nx.sub(&TruncatedInt::new(&BigInt::one(), p, nx.precision()));
    Ok(d.valuation().at_least(Q::from_integer(n as i64)) != Some(false))
}
