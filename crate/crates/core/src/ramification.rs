//! Ramification invariants of a Galois, totally ramified `L = K(pi)`.
//!
//! Everything is derived from the multiset `{ i(sigma) = v(sigma(pi) - pi) }`
//! over the non-identity conjugates. Lower numbering follows Fontaine:
//! `G_(t) = { sigma : i(sigma) >= t }`, and the transition function is
//! `phi(t) = integral_0^t #G_(s) ds`. The abstract group is never built.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::extension::{galois_check, EisensteinPoly, ExtElement, ExtRing, GaloisCheck};
use crate::padic::{BaseField, Certified, Valuation};

type Q = Rational64;

/// Order function data of a Galois Eisenstein polynomial, with the conjugates
/// of `pi` cached for reuse by the norm-map and identity code.
#[derive(Debug, Clone)]
pub struct RamificationData {
    f: EisensteinPoly,
    ring: ExtRing,
    precision: u32,
    conjugates: Vec<ExtElement>,
    orders: Vec<Q>,
    breaks: Vec<Q>,
    phi_vertices: Vec<(Q, Q)>,
}

impl RamificationData {
    pub fn new(f: &EisensteinPoly, precision: u32) -> Result<Self> {
        let conjugates = match galois_check(f, precision)? {
            GaloisCheck::Galois(c) => c,
            GaloisCheck::NotGalois(n) => {
                return Err(Error::NotGalois {
                    root_count: n,
                    degree: f.degree(),
                })
            }
        };
        let ring = conjugates[0].ring().clone();
        let pi = &conjugates[0];
        let mut orders = Vec::with_capacity(conjugates.len() - 1);
        for c in &conjugates[1..] {
            match (c - pi).val_cert() {
                Certified::Exact(v) => orders.push(v),
                Certified::AtLeast(_) => {
                    return Err(Error::precision(
                        "conjugates not separated at working precision",
                    ))
                }
            }
        }
        let mut breaks = orders.clone();
        breaks.sort();
        breaks.dedup();

        let e = f.degree();
        let mut phi_vertices = vec![(Q::zero(), Q::zero())];
        let mut prev = Q::zero();
        let mut acc = Q::zero();
        for &t in &breaks {
            let slope = 1 + orders.iter().filter(|&&o| o >= t).count();
            acc += (t - prev) * Q::from_integer(slope as i64);
            phi_vertices.push((t, acc));
            prev = t;
        }
        debug_assert!(e == 1 || !breaks.is_empty());
        Ok(RamificationData {
            f: f.clone(),
            ring,
            precision,
            conjugates,
            orders,
            breaks,
            phi_vertices,
        })
    }

    pub fn poly(&self) -> &EisensteinPoly {
        &self.f
    }

    pub fn ring(&self) -> &ExtRing {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `sigma(pi)` for every `sigma`; the identity comes first.
    pub fn conjugates(&self) -> &[ExtElement] {
        &self.conjugates
    }

    /// `i(sigma)` for the non-identity `sigma`, aligned with `conjugates()[1..]`.
    pub fn orders(&self) -> &[Q] {
        &self.orders
    }

    /// The distinct values of `i(sigma)`, ascending: the lower breaks.
    pub fn lower_breaks(&self) -> &[Q] {
        &self.breaks
    }

    /// `phi` at each lower break.
    pub fn upper_breaks(&self) -> Vec<Q> {
        self.phi_vertices[1..].iter().map(|v| v.1).collect()
    }

    /// `(t, phi(t))` at `t = 0` and each lower break.
    pub fn phi_vertices(&self) -> &[(Q, Q)] {
        &self.phi_vertices
    }

    /// Largest lower break `i_{L/K}` (zero for the trivial extension).
    pub fn i_break(&self) -> Q {
        self.breaks.last().copied().unwrap_or_default()
    }

    /// Largest upper break `u_{L/K} = phi(i_{L/K})`.
    pub fn u_break(&self) -> Q {
        self.phi_vertices.last().map(|v| v.1).unwrap_or_default()
    }

    /// `#G_(t)`; `#G_(0) = e`.
    pub fn filtration_order(&self, t: Q) -> usize {
        1 + self.orders.iter().filter(|&&o| o >= t).count()
    }

    /// `(t, #G_(t))` at `t = 0` and at each lower break. `#G_(t)` is constant on
    /// the half-open intervals `(t_{j-1}, t_j]` and is `1` beyond the last break.
    pub fn filtration_steps(&self) -> Vec<(Q, usize)> {
        core::iter::once(Q::zero())
            .chain(self.breaks.iter().copied())
            .map(|t| (t, self.filtration_order(t)))
            .collect()
    }

    /// Fontaine's transition function `phi`, for `t >= 0`.
    pub fn phi(&self, t: Q) -> Q {
        interpolate(&self.phi_vertices, t, Q::one())
    }

    /// The inverse `psi` of [`phi`](Self::phi), for `u >= 0`.
    pub fn psi(&self, u: Q) -> Q {
        let swapped: Vec<(Q, Q)> = self.phi_vertices.iter().map(|&(a, b)| (b, a)).collect();
        interpolate(&swapped, u, Q::one())
    }

    /// Serre's `psi(u) = e psi~(u + 1) - 1`.
    pub fn psi_serre(&self, u: Q) -> Q {
        Q::from_integer(self.degree() as i64) * self.psi(u + Q::one()) - Q::one()
    }

    /// Serre's `phi(i) = phi~((i + 1)/e) - 1`.
    pub fn phi_serre(&self, i: Q) -> Q {
        self.phi((i + Q::one()) / Q::from_integer(self.degree() as i64)) - Q::one()
    }

    /// `max_sigma v(sigma(pi) - beta)` for `beta` in `O_L`.
    pub fn max_conjugate_closeness(&self, beta: &ExtElement) -> Result<Valuation> {
        let mut best = None;
        for c in &self.conjugates {
            let v = match c.checked_sub(beta)?.val_cert() {
                Certified::Exact(v) => Valuation::Finite(v),
                Certified::AtLeast(_) => return Ok(Valuation::Infinity),
            };
            best = best.max(Some(v));
        }
        Ok(best.unwrap_or(Valuation::Infinity))
    }

    /// `table[j][k]` is the index of `sigma_j sigma_k`, in conjugate order.
    ///
    /// `sigma_k(pi) = P_k(pi)` as a polynomial in `pi`, so
    /// `sigma_j(sigma_k(pi)) = P_k(sigma_j(pi))`, matched against the conjugates.
    pub fn composition_table(&self) -> Result<Vec<Vec<usize>>> {
        let sep = self.i_break();
        let n = self.conjugates.len();
        let mut table = vec![vec![0; n]; n];
        for (j, rj) in self.conjugates.iter().enumerate() {
            let powers: Vec<ExtElement> = (0..self.degree() as u32).map(|i| rj.pow(i)).collect();
            for (k, rk) in self.conjugates.iter().enumerate() {
                let mut value = self.ring.zero(rj.precision());
                for (c, pw) in rk.coords().iter().zip(&powers) {
                    value = &value + &pw.scale(c);
                }
                let hits: Vec<usize> = self
                    .conjugates
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| match (*r - &value).val_cert() {
                        Certified::Exact(v) => v > sep,
                        Certified::AtLeast(_) => true,
                    })
                    .map(|(m, _)| m)
                    .collect();
                match hits.as_slice() {
                    [m] => table[j][k] = *m,
                    _ => {
                        return Err(Error::precision(format!(
                            "cannot identify sigma_{} sigma_{} among the conjugates",
                            j, k
                        )))
                    }
                }
            }
        }
        Ok(table)
    }

    pub fn is_abelian(&self) -> Result<bool> {
        let t = self.composition_table()?;
        Ok((0..t.len()).all(|j| (0..t.len()).all(|k| t[j][k] == t[k][j])))
    }

    pub fn to_serre(&self) -> SerreData {
        let e = Q::from_integer(self.degree() as i64);
        let mut psi_vertices = vec![(-Q::one(), -Q::one())];
        psi_vertices.extend(
            self.phi_vertices[1..]
                .iter()
                .map(|&(i, u)| (u - Q::one(), e * i - Q::one())),
        );
        SerreData {
            e: self.degree(),
            lower_breaks: self.breaks.iter().map(|&t| e * t - Q::one()).collect(),
            upper_breaks: self.upper_breaks().iter().map(|&u| u - Q::one()).collect(),
            psi_vertices,
        }
    }
}

/// Piecewise-linear interpolation through `vertices` (ascending in the first
/// coordinate), continued with `tail_slope` after the last vertex.
fn interpolate(vertices: &[(Q, Q)], x: Q, tail_slope: Q) -> Q {
    for w in vertices.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if x <= x1 {
            return y0 + (x - x0) * (y1 - y0) / (x1 - x0);
        }
    }
    let (xl, yl) = *vertices.last().expect("at least one vertex");
    yl + (x - xl) * tail_slope
}

/// The same data in Serre's numbering: `G_i = G_((i+1)/e)`, `G^u = G^(u+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerreData {
    pub e: usize,
    pub lower_breaks: Vec<Q>,
    pub upper_breaks: Vec<Q>,
    /// `(u, psi(u))` from `(-1, -1)` through each upper break.
    pub psi_vertices: Vec<(Q, Q)>,
}

impl SerreData {
    /// Serre's `psi`; slope `e` past the last break.
    pub fn psi(&self, u: Q) -> Q {
        interpolate(&self.psi_vertices, u, Q::from_integer(self.e as i64))
    }

    pub fn phi(&self, i: Q) -> Q {
        let swapped: Vec<(Q, Q)> = self.psi_vertices.iter().map(|&(a, b)| (b, a)).collect();
        interpolate(&swapped, i, Q::one() / Q::from_integer(self.e as i64))
    }

    /// Back to Fontaine's numbering: `(lower, upper)` breaks.
    pub fn to_fontaine(&self) -> (Vec<Q>, Vec<Q>) {
        let e = Q::from_integer(self.e as i64);
        (
            self.lower_breaks
                .iter()
                .map(|&i| (i + Q::one()) / e)
                .collect(),
            self.upper_breaks.iter().map(|&u| u + Q::one()).collect(),
        )
    }
}

/// Ramification data at the default working precision `32 e`.
pub fn ramification_data(f: &EisensteinPoly) -> Result<RamificationData> {
    RamificationData::new(f, BaseField::default_precision(f.degree()))
}

/// `phi(i)` on valuations; infinity maps to infinity.
pub fn phi_eval(rd: &RamificationData, i: Valuation) -> Valuation {
    match i {
        Valuation::Finite(q) => Valuation::Finite(rd.phi(q)),
        Valuation::Infinity => Valuation::Infinity,
    }
}

pub fn psi_eval(rd: &RamificationData, u: Valuation) -> Valuation {
    match u {
        Valuation::Finite(q) => Valuation::Finite(rd.psi(q)),
        Valuation::Infinity => Valuation::Infinity,
    }
}

pub fn to_serre(rd: &RamificationData) -> SerreData {
    rd.to_serre()
}

pub fn filtration_order(rd: &RamificationData, i: Valuation) -> usize {
    match i {
        Valuation::Finite(q) => rd.filtration_order(q),
        Valuation::Infinity => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    fn rd(p: u64, tail: &[i64]) -> RamificationData {
        ramification_data(&EisensteinPoly::from_i64(p, tail).unwrap()).unwrap()
    }

    #[test]
    fn sqrt2_over_q2() {
        let r = rd(2, &[-2, 0]);
        assert_eq!(r.orders(), &[q(3, 2)]);
        assert_eq!(r.i_break(), q(3, 2));
        assert_eq!(r.u_break(), q(3, 1));
        assert_eq!(r.phi(q(3, 2)), q(3, 1));
        assert_eq!(r.psi(q(3, 1)), q(3, 2));
        assert_eq!(r.phi(Q::zero()), Q::zero());
        assert_eq!(r.phi(q(3, 2) + q(7, 3)), q(3, 1) + q(7, 3));
        assert_eq!(r.filtration_order(Q::zero()), 2);
        assert_eq!(r.filtration_order(q(3, 2)), 2);
        assert_eq!(r.filtration_order(q(3, 2) + q(1, 1000)), 1);

        let s = r.to_serre();
        assert_eq!(s.upper_breaks, vec![q(2, 1)]);
        assert_eq!(s.lower_breaks, vec![q(2, 1)]);
        assert_eq!(s.psi(q(2, 1)), q(2, 1));
        assert_eq!(s.psi(q(3, 1)), q(4, 1));
        assert_eq!(r.psi_serre(q(2, 1)), q(2, 1));
        assert_eq!(r.psi_serre(q(3, 1)), q(4, 1));
        assert_eq!(s.to_fontaine(), (vec![q(3, 2)], vec![q(3, 1)]));
    }

    #[test]
    fn tame_quadratics_over_q3() {
        for tail in [[-3i64, 0], [3, 3]] {
            let r = rd(3, &tail);
            assert_eq!(r.orders(), &[q(1, 2)]);
            assert_eq!(r.u_break(), Q::one());
            assert_eq!(r.psi_serre(Q::zero()), Q::zero());
            assert_eq!(r.psi_serre(Q::one()), q(2, 1));
        }
    }

    #[test]
    fn not_galois_is_an_error() {
        let f = EisensteinPoly::from_i64(3, &[-3, 0, 0]).unwrap();
        assert_eq!(
            ramification_data(&f).unwrap_err(),
            Error::NotGalois {
                root_count: 1,
                degree: 3
            }
        );
    }

    #[test]
    fn phi_and_psi_are_inverse() {
        let r = rd(2, &[2, 2]);
        for n in 0..40 {
            let t = q(n, 7);
            assert_eq!(r.psi(r.phi(t)), t);
            assert_eq!(r.phi_serre(r.psi_serre(t)), t);
        }
    }

    #[test]
    fn valuation_wrappers() {
        let r = rd(2, &[-2, 0]);
        assert_eq!(phi_eval(&r, Valuation::frac(3, 2)), Valuation::int(3));
        assert_eq!(psi_eval(&r, Valuation::Infinity), Valuation::Infinity);
        assert_eq!(filtration_order(&r, Valuation::Infinity), 1);
        assert_eq!(to_serre(&r).e, 2);
    }

    #[test]
    fn composition_of_quadratic_conjugates() {
        let r = rd(2, &[-2, 0]);
        assert_eq!(r.composition_table().unwrap(), vec![vec![0, 1], vec![1, 0]]);
        assert!(r.is_abelian().unwrap());
    }
}
