//! Enumeration of Eisenstein polynomials in a coefficient box and their
//! clustering into classes that define the same extension.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::extension::EisensteinPoly;
use crate::identity::{decide_with, oracle_root, with_precision_retry, Verdict};
use crate::padic::{check_prime, pow, sylvester_resultant, val_exponent};
use crate::ramification::{ramification_data, RamificationData};

type Q = Rational64;

/// Root-search precision for the clustering oracle; raised on demand.
pub const ORACLE_PRECISION: u32 = 8;
const ORACLE_RETRIES: u32 = 3;

/// All Eisenstein polynomials of degree `e` with `a_i` in `[0, p^B)`, ordered
/// lexicographically on `(a_0, ..., a_{e-1})`.
pub fn enumerate(p: u64, e: usize, b: u32) -> Result<Vec<EisensteinPoly>> {
    check_prime(p)?;
    if e == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    if b < 2 {
        return Err(Error::InvalidArgument(format!("box exponent {} < 2", b)));
    }
    let bound = pow(p, b);
    let pb = BigInt::from(p);
    let p2 = pow(p, 2);
    let step = |x: &BigInt| x + &pb;

    let mut a0s = Vec::new();
    let mut x = pb.clone();
    while x < bound {
        if !(&x % &p2 == BigInt::from(0)) {
            a0s.push(x.clone());
        }
        x = step(&x);
    }
    let mut higher = Vec::new();
    let mut x = BigInt::from(0);
    while x < bound {
        higher.push(x.clone());
        x = step(&x);
    }

    let mut out = Vec::new();
    let mut idx = alloc::vec![0usize; e];
    'outer: loop {
        let mut tail = Vec::with_capacity(e);
        tail.push(a0s[idx[0]].clone());
        tail.extend(idx[1..].iter().map(|&j| higher[j].clone()));
        out.push(EisensteinPoly::new(p, tail)?);
        for pos in (0..e).rev() {
            let len = if pos == 0 { a0s.len() } else { higher.len() };
            idx[pos] += 1;
            if idx[pos] < len {
                continue 'outer;
            }
            idx[pos] = 0;
        }
        break;
    }
    Ok(out)
}

/// One extension class of the census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusClass {
    /// Lexicographically smallest member.
    pub representative: EisensteinPoly,
    pub members: Vec<EisensteinPoly>,
    pub galois: bool,
    pub u_break: Option<Q>,
    /// `v_p(Res(f, f'))` of the representative.
    pub disc_valuation: u64,
}

impl CensusClass {
    pub fn members_count(&self) -> usize {
        self.members.len()
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: alloc::vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            core::cmp::Ordering::Less => self.parent[ra] = rb,
            core::cmp::Ordering::Greater => self.parent[rb] = ra,
            core::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Representative of a class under construction, with its ramification data
/// when it is Galois.
struct Anchor {
    index: usize,
    ramification: Option<RamificationData>,
}

impl Anchor {
    fn new(index: usize, f: &EisensteinPoly) -> Result<Self> {
        let ramification = match ramification_data(f) {
            Ok(rd) => Some(rd),
            Err(Error::NotGalois { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(Anchor {
            index,
            ramification,
        })
    }
}

/// Whether `f` and `g` define the same extension: the ramification bounds
/// first when `f` is Galois, the root oracle otherwise.
fn same_extension(
    f: &EisensteinPoly,
    rd: Option<&RamificationData>,
    g: &EisensteinPoly,
) -> Result<bool> {
    if let Some(rd) = rd {
        match decide_with(rd, g)?.verdict {
            Verdict::Same => return Ok(true),
            Verdict::Different => return Ok(false),
            Verdict::Unknown => {}
        }
    }
    let root = with_precision_retry(ORACLE_PRECISION, ORACLE_RETRIES, |prec| {
        oracle_root(f, g, prec)
    })?;
    Ok(root.is_some())
}

fn disc_valuation(f: &EisensteinPoly) -> Result<u64> {
    let h = f.to_poly();
    let d = sylvester_resultant(h.coeffs(), h.derivative().coeffs());
    val_exponent(&d, f.p()).ok_or(Error::UnsupportedMultipleRoot)
}

/// Partitions `polys` into extension classes, sorted by representative.
pub fn cluster(polys: &[EisensteinPoly]) -> Result<Vec<CensusClass>> {
    let mut polys = polys.to_vec();
    polys.sort();
    polys.dedup();
    if let Some(first) = polys.first() {
        if let Some(g) = polys
            .iter()
            .find(|g| g.p() != first.p() || g.degree() != first.degree())
        {
            return Err(if g.p() != first.p() {
                Error::PrimeMismatch {
                    left: first.p(),
                    right: g.p(),
                }
            } else {
                Error::DegreeMismatch {
                    left: first.degree(),
                    right: g.degree(),
                }
            });
        }
    }

    let mut uf = UnionFind::new(polys.len());
    let mut anchors: Vec<Anchor> = Vec::new();
    for (j, g) in polys.iter().enumerate() {
        let mut placed = false;
        for a in &anchors {
            let f = &polys[a.index];
            if same_extension(f, a.ramification.as_ref(), g)? {
                uf.union(a.index, j);
                placed = true;
                break;
            }
        }
        if !placed {
            anchors.push(Anchor::new(j, g)?);
        }
    }

    let mut classes = Vec::with_capacity(anchors.len());
    for a in &anchors {
        let root = uf.find(a.index);
        let members: Vec<EisensteinPoly> = (0..polys.len())
            .filter(|&j| uf.find(j) == root)
            .map(|j| polys[j].clone())
            .collect();
        let representative = polys[a.index].clone();
        classes.push(CensusClass {
            disc_valuation: disc_valuation(&representative)?,
            galois: a.ramification.is_some(),
            u_break: a.ramification.as_ref().map(|rd| rd.u_break()),
            representative,
            members,
        });
    }
    classes.sort_by(|x, y| x.representative.cmp(&y.representative));
    Ok(classes)
}

/// Classes in the box `[0, p^B)` with the class count at every smaller box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub p: u64,
    pub e: usize,
    pub b: u32,
    pub classes: Vec<CensusClass>,
    /// `(B', class count)` for `B' = 2..=B`.
    pub counts: Vec<(u32, usize)>,
}

impl Census {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Smallest `B0 < B` with the class count constant on `B0..=B`.
    pub fn stable_at(&self) -> Option<u32> {
        let (_, last) = *self.counts.last()?;
        let mut start = None;
        for &(b, c) in self.counts.iter().rev() {
            if c != last {
                break;
            }
            start = Some(b);
        }
        start.filter(|&b0| b0 < self.b)
    }
}

pub fn census(p: u64, e: usize, b: u32) -> Result<Census> {
    let classes = cluster(&enumerate(p, e, b)?)?;
    let mut counts = Vec::new();
    for bb in 2..b {
        counts.push((bb, cluster(&enumerate(p, e, bb)?)?.len()));
    }
    counts.push((b, classes.len()));
    Ok(Census {
        p,
        e,
        b,
        classes,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eis(p: u64, tail: &[i64]) -> EisensteinPoly {
        EisensteinPoly::from_i64(p, tail).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(
            enumerate(2, 2, 2).unwrap(),
            alloc::vec![eis(2, &[2, 0]), eis(2, &[2, 2])]
        );
        assert_eq!(enumerate(2, 2, 3).unwrap().len(), 8);
        assert_eq!(enumerate(3, 2, 2).unwrap().len(), 6);
        assert_eq!(enumerate(2, 3, 2).unwrap().len(), 4);
        assert!(matches!(enumerate(2, 2, 1), Err(Error::InvalidArgument(_))));
        assert_eq!(enumerate(4, 2, 2), Err(Error::NotPrime(4)));
        let v = enumerate(3, 2, 3).unwrap();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn small_boxes() {
        let c = cluster(&enumerate(2, 2, 2).unwrap()).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].representative, eis(2, &[2, 0]));
        assert_eq!(c[1].representative, eis(2, &[2, 2]));
        assert_eq!(c[0].disc_valuation, 3);
        assert_eq!(c[1].disc_valuation, 2);
        assert_eq!(cluster(&enumerate(2, 2, 3).unwrap()).unwrap().len(), 5);
    }

    #[test]
    fn quadratic_counts() {
        let c = census(2, 2, 4).unwrap();
        assert_eq!(c.class_count(), 6);
        assert_eq!(
            c.classes.iter().map(|k| k.members_count()).sum::<usize>(),
            32
        );
        assert!(c.classes.iter().all(|k| k.galois));
        let c = census(3, 2, 4).unwrap();
        assert_eq!(c.class_count(), 2);
        assert_eq!(c.stable_at(), Some(2));
        assert!(c
            .classes
            .iter()
            .all(|k| k.u_break == Some(Q::from_integer(1))));
    }

    #[test]
    fn non_galois_cubics() {
        let c = cluster(&enumerate(3, 3, 2).unwrap()).unwrap();
        assert!(c.iter().any(|k| !k.galois));
        let total: usize = c.iter().map(|k| k.members_count()).sum();
        assert_eq!(total, enumerate(3, 3, 2).unwrap().len());
    }
}
