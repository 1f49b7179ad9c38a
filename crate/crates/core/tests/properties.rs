use eisenstein_core::census::{census, cluster, enumerate};
use eisenstein_core::identity::{decide_with, oracle_root, Verdict};
use eisenstein_core::metric::{
    distance_by_substitution, distance_coefficients, distance_e, distance_p, distance_resultant,
};
use eisenstein_core::norm_graded::{norm_lands_in, serre_level};
use eisenstein_core::padic::{Certified, Valuation};
use eisenstein_core::ramification::{ramification_data, RamificationData};
use eisenstein_core::{EisensteinPoly, ExtElement};
use num_bigint::BigInt;
use num_rational::Rational64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn eis(p: u64, tail: &[i64]) -> EisensteinPoly {
    EisensteinPoly::from_i64(p, tail).unwrap()
}

/// Eisenstein polynomials over `Q_p` of degree `e` with coefficients below `p^6`.
fn eisenstein(p: u64, e: usize) -> impl Strategy<Value = EisensteinPoly> {
    let top = p.pow(5) as i64;
    prop::collection::vec(0..top, e).prop_map(move |raw| {
        let p = p as i64;
        let mut tail: Vec<i64> = raw.iter().map(|r| p * r).collect();
        if raw[0] % p == 0 {
            tail[0] += p;
        }
        EisensteinPoly::from_i64(p as u64, &tail).unwrap()
    })
}

fn prime_and_degree() -> impl Strategy<Value = (u64, usize)> {
    (
        prop::sample::select(vec![2u64, 3, 5]),
        prop::sample::select(vec![2usize, 3, 4, 6]),
    )
}

fn pair() -> impl Strategy<Value = (EisensteinPoly, EisensteinPoly)> {
    prime_and_degree().prop_flat_map(|(p, e)| (eisenstein(p, e), eisenstein(p, e)))
}

fn triple() -> impl Strategy<Value = (EisensteinPoly, EisensteinPoly, EisensteinPoly)> {
    prime_and_degree()
        .prop_flat_map(|(p, e)| (eisenstein(p, e), eisenstein(p, e), eisenstein(p, e)))
}

/// Galois classes of the quadratic censuses over `Q_2` and `Q_3`.
fn galois_quadratics() -> Vec<RamificationData> {
    let mut out = Vec::new();
    for p in [2, 3] {
        for class in census(p, 2, 4).unwrap().classes {
            out.push(ramification_data(&class.representative).unwrap());
        }
    }
    out
}

fn random_unit(rd: &RamificationData, coords: &[u64], prec: u32) -> ExtElement {
    let p = rd.poly().p();
    let mut c: Vec<BigInt> = coords.iter().map(|&x| BigInt::from(x)).collect();
    if coords[0].is_multiple_of(p) {
        c[0] += 1;
    }
    rd.ring().element(&c, prec)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn coefficient_and_resultant_distances_agree((f, g) in pair()) {
        prop_assert_eq!(distance_coefficients(&f, &g).unwrap(), distance_resultant(&f, &g).unwrap());
    }

    #[test]
    fn distance_is_symmetric_ultrametric((f, g, h) in triple()) {
        let d = |a, b| distance_e(a, b).unwrap().value();
        prop_assert_eq!(d(&f, &g), d(&g, &f));
        prop_assert!(d(&f, &h) >= d(&f, &g).min(d(&g, &h)));
        let r = |a: &EisensteinPoly, b: &EisensteinPoly| distance_p(&a.to_poly(), &b.to_poly(), a.p()).unwrap();
        prop_assert_eq!(r(&f, &g), r(&g, &f));
        prop_assert!(r(&f, &h) >= r(&f, &g).min(r(&g, &h)));
    }

    #[test]
    fn distances_lie_in_lattice((f, g) in pair()) {
        let d = distance_e(&f, &g).unwrap().value();
        if f == g {
            prop_assert_eq!(d, Valuation::Infinity);
        } else {
            prop_assert!(d >= Valuation::int(1));
            prop_assert!(d.has_denominator_dividing(f.degree()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn substitution_matches_distance((f, g) in pair()) {
        let prec = 12;
        let d = distance_e(&f, &g).unwrap().value();
        match distance_by_substitution(&f, &g, prec).unwrap() {
            Certified::Exact(v) => prop_assert_eq!(d, Valuation::Finite(v)),
            Certified::AtLeast(b) => prop_assert!(d >= Valuation::Finite(b)),
        }
    }
}

#[test]
fn uniformizer_closeness_transfers_through_phi() {
    let fields = galois_quadratics();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for rd in &fields {
        let prec = 24;
        let pi = rd.ring().pi(prec);
        let f = rd.poly().to_poly();
        for _ in 0..200 {
            let coords: Vec<u64> = (0..rd.degree())
                .map(|_| rng.gen_range(0..1 << 20))
                .collect();
            let beta = &random_unit(rd, &coords, prec) * &pi;
            let lhs = rd.ring().eval(&f, &beta).val_cert();
            let closest = rd.max_conjugate_closeness(&beta).unwrap();
            let Some(lhs) = lhs.exact() else { continue };
            let Valuation::Finite(i) = closest else {
                panic!("beta is a conjugate")
            };
            assert_eq!(lhs, rd.phi(i), "{} beta {:?}", rd.poly(), beta.coords());
        }
    }
}

#[test]
fn abelian_breaks_are_integers() {
    let mut fields = galois_quadratics();
    for f in [eis(7, &[-7, 0, 0]), eis(5, &[-5, 0, 0, 0]), eis(3, &[3, 3])] {
        fields.push(ramification_data(&f).unwrap());
    }
    for c in cluster(&enumerate(3, 3, 2).unwrap()).unwrap() {
        if c.galois {
            fields.push(ramification_data(&c.representative).unwrap());
        }
    }
    assert!(fields
        .iter()
        .any(|rd| rd.degree() == 3 && !rd.poly().is_tame()));
    for rd in &fields {
        assert!(rd.is_abelian().unwrap());
        assert!(rd.u_break().is_integer(), "{}", rd.poly());
        let e = rd.degree();
        let p = rd.poly().p();
        if rd.poly().is_tame() {
            assert_eq!(rd.u_break(), Rational64::from_integer(1));
            assert_eq!(rd.i_break(), Rational64::new(1, e as i64));
        } else {
            let mut top = rd.filtration_order(rd.i_break());
            while top % p as usize == 0 {
                top /= p as usize;
            }
            assert_eq!(top, 1, "{}", rd.poly());
        }
        let serre = rd.to_serre();
        let (lower, upper) = serre.to_fontaine();
        assert_eq!(lower, rd.lower_breaks());
        assert_eq!(upper, rd.upper_breaks());
        for k in 0..8 {
            let u = Rational64::new(k, 2);
            assert_eq!(rd.phi(rd.psi(u)), u);
            assert_eq!(serre.phi(serre.psi(u)), u);
        }
    }
}

#[test]
fn perturbations_beyond_the_break_keep_the_field() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for rd in galois_quadratics() {
        let f = rd.poly();
        let (p, e) = (f.p(), f.degree() as i64);
        let u = rd.u_break();
        for _ in 0..20 {
            let r: Vec<i64> = (0..f.degree()).map(|_| rng.gen_range(0..50)).collect();
            let mut g = f.clone();
            for (i, ri) in r.iter().enumerate() {
                let k = (u - Rational64::new(i as i64, e)).floor().to_integer() + 1;
                let b = f.coeff(i) + BigInt::from(*ri) * BigInt::from(p).pow(k as u32);
                g = g.with_coeff(i, b).unwrap();
            }
            assert!(distance_e(f, &g).unwrap().value() > Valuation::Finite(u));
            assert!(oracle_root(f, &g, 8).unwrap().is_some(), "{} vs {}", f, g);
        }
    }
}

#[test]
fn census_classes_are_an_equivalence() {
    for (p, e, b) in [(2, 2, 4), (3, 2, 3), (3, 3, 2)] {
        let classes = cluster(&enumerate(p, e, b).unwrap()).unwrap();
        for c in &classes {
            for m in c.members.iter().step_by(3) {
                assert!(oracle_root(&c.representative, m, 8).unwrap().is_some());
                assert!(oracle_root(m, &c.representative, 8).unwrap().is_some());
            }
        }
        for (i, a) in classes.iter().enumerate() {
            for c in &classes[i + 1..] {
                assert!(oracle_root(&a.representative, &c.representative, 8)
                    .unwrap()
                    .is_none());
            }
        }
    }
}

#[test]
fn oracle_relation_is_transitive() {
    let polys = enumerate(2, 2, 3).unwrap();
    let same = |f: &EisensteinPoly, g: &EisensteinPoly| oracle_root(f, g, 8).unwrap().is_some();
    for f in &polys {
        for g in &polys {
            for h in &polys {
                if same(f, g) && same(g, h) {
                    assert!(same(f, h), "{} {} {}", f, g, h);
                }
            }
        }
    }
}

#[test]
fn ramification_verdicts_never_contradict_the_oracle() {
    for (p, e, b) in [(2, 2, 4), (3, 2, 3)] {
        let polys = enumerate(p, e, b).unwrap();
        for f in polys.iter().step_by(2) {
            let rd = ramification_data(f).unwrap();
            for g in &polys {
                let v = decide_with(&rd, g).unwrap().verdict;
                if v == Verdict::Unknown {
                    continue;
                }
                let same = oracle_root(f, g, 8).unwrap().is_some();
                assert_eq!(v == Verdict::Same, same, "{} vs {}", f, g);
            }
        }
    }
}

#[test]
fn norms_respect_the_unit_filtration() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for rd in galois_quadratics() {
        let top = rd.u_break().to_integer() as u32 + 2;
        for n in 0..=top {
            let level = serre_level(&rd, n).unwrap();
            let prec = n + 4;
            for _ in 0..20 {
                let coords: Vec<u64> = (0..rd.degree())
                    .map(|_| rng.gen_range(0..1 << 16))
                    .collect();
                let z = random_unit(&rd, &coords, prec);
                let one = rd.ring().one(prec);
                let x = &one + &(&z * &rd.ring().pi_pow(level, prec));
                assert!(norm_lands_in(&x, n).unwrap());
                let y = &one + &(&z * &rd.ring().pi_pow(level + 1, prec));
                assert!(norm_lands_in(&y, n + 1).unwrap());
            }
        }
    }
}

/// For `u'` in `U_L^{psi(m-1)}` off the next layer with `N(u')` outside
/// `U_K^m`, the uniformizer `u' pi` sits at distance exactly `i_break` from `pi`
/// and from the conjugates at the break.
#[test]
fn twisted_uniformizer_sits_at_the_break() {
    let mut checked = 0;
    let mut fields = galois_quadratics();
    for f in [eis(5, &[-5, 0]), eis(7, &[-7, 0, 0]), eis(7, &[-7, 0])] {
        fields.push(ramification_data(&f).unwrap());
    }
    for rd in &fields {
        let m = rd.u_break().to_integer() as u32;
        let level = serre_level(rd, m - 1).unwrap();
        let prec = 20;
        let ring = rd.ring();
        let p = rd.poly().p();
        let pi = ring.pi(prec);
        for c in 1..p {
            let unit = if level == 0 {
                ring.scalar(&BigInt::from(c), prec)
            } else {
                &ring.one(prec) + &ring.pi_pow(level, prec).scale(&BigInt::from(c))
            };
            if norm_lands_in(&unit, m).unwrap() {
                continue;
            }
            checked += 1;
            let twisted = &unit * &pi;
            let i = Valuation::Finite(rd.i_break());
            assert_eq!((&twisted - &pi).val().unwrap(), i);
            for (s, &o) in rd.conjugates()[1..].iter().zip(rd.orders()) {
                let v = (&twisted - s).val().unwrap();
                if o == rd.i_break() {
                    assert_eq!(v, i);
                } else {
                    assert!(v < i);
                }
            }
        }
    }
    assert!(checked >= 3);
}
