use std::sync::Arc;

use fibrant::exactalg::{Field, Monomial, Polynomial, Rational};
use fibrant::groebner::{Ideal, Path};
use fibrant::localring::{colength, colength_with, min_gens, min_gens_with, AmbientRing};
use proptest::prelude::*;

type R = AmbientRing<Rational>;
type I = Ideal<Rational>;

fn ring(n: usize) -> Arc<R> {
    let names = ["x", "y", "z"];
    R::polynomial_ring(&names[..n])
}

fn mono(r: &Arc<R>, ms: &[&[u32]]) -> I {
    Ideal::from_monomials(r, ms.iter().map(|e| Monomial::new(e))).unwrap()
}

#[test]
fn sums_products_powers() {
    let r = ring(2);
    let (x, y) = (r.var(0), r.var(1));
    let s = Ideal::new(&r, vec![x.clone()]).unwrap().sum(&Ideal::new(&r, vec![y.clone()]).unwrap()).unwrap();
    assert!(s.equals(&Ideal::maximal(&r)).unwrap());
    let m = Ideal::maximal(&r);
    assert!(m.product(&m).unwrap().equals(&mono(&r, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap());
    assert!(m.product(&Ideal::unit(&r)).unwrap().equals(&m).unwrap());
    let cube = m.power(3).unwrap();
    assert_eq!(cube.gens().len(), 4);
    assert!(cube.equals(&mono(&r, &[&[3, 0], &[2, 1], &[1, 2], &[0, 3]])).unwrap());
}

#[test]
fn intersections_and_quotients() {
    let r = ring(2);
    let x = mono(&r, &[&[1, 0]]);
    let y = mono(&r, &[&[0, 1]]);
    assert!(x.intersection(&y).unwrap().equals(&mono(&r, &[&[1, 1]])).unwrap());
    let a = mono(&r, &[&[2, 0], &[1, 1]]);
    for path in [Path::Auto, Path::General] {
        assert!(a.intersection_with(&y, path).unwrap().equals(&mono(&r, &[&[1, 1]])).unwrap());
        let b = mono(&r, &[&[1, 1], &[0, 3]]);
        assert!(b.quotient_with(&y, path).unwrap().equals(&mono(&r, &[&[1, 0], &[0, 2]])).unwrap());
        let x2 = mono(&r, &[&[2, 0]]);
        assert!(x2.quotient_with(&x, path).unwrap().equals(&x).unwrap());
    }
}

/// Brute-force membership oracle for monomial ideals: a monomial lies in the
/// ideal iff some generator divides it.
fn brute_in(gens: &[Monomial], m: &Monomial) -> bool {
    gens.iter().any(|g| g.divides(m))
}

#[test]
fn intersection_matches_brute_force() {
    let r = ring(2);
    let a = mono(&r, &[&[2, 0], &[1, 1]]);
    let b = mono(&r, &[&[0, 1]]);
    let meet = a.intersection_with(&b, Path::General).unwrap();
    let ga: Vec<Monomial> = a.gens().iter().map(|g| g.lm().unwrap().clone()).collect();
    let gb: Vec<Monomial> = b.gens().iter().map(|g| g.lm().unwrap().clone()).collect();
    for i in 0..5 {
        for j in 0..5 {
            let m = Monomial::new(&[i, j]);
            let expect = brute_in(&ga, &m) && brute_in(&gb, &m);
            let p = Polynomial::monomial(r.order(), m);
            assert_eq!(meet.contains(&p).unwrap(), expect);
        }
    }
}

#[test]
fn non_monomial_quotient() {
    let r = ring(2);
    let (x, y) = (r.var(0), r.var(1));
    // (x^2 - y^2) : (x - y) = (x + y)  modulo nothing else
    let f = x.pow(2).sub(&y.pow(2));
    let i = Ideal::new(&r, vec![f]).unwrap();
    let q = i.quotient_elem(&x.sub(&y)).unwrap();
    assert!(q.equals(&Ideal::new(&r, vec![x.add(&y)]).unwrap()).unwrap());
}

#[test]
fn normal_form_in_quotient_ring() {
    let r = ring(2);
    let q = vec![r.monomial(&[2, 0]), r.monomial(&[1, 1])];
    let a = R::new(r.names().to_vec(), q).unwrap();
    let zero = Ideal::zero(&a);
    assert!(zero.normal_form(&a.monomial(&[1, 1])).unwrap().is_zero());
    assert_eq!(zero.normal_form(&a.var(0)).unwrap(), a.var(0));
}

fn random_monomial_ideal(nvars: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..5, nvars), 1..5)
        .prop_map(|gs| gs.into_iter().filter(|g| g.iter().any(|&e| e > 0)).collect::<Vec<_>>())
        .prop_filter("nonempty", |gs| !gs.is_empty())
}

fn build(r: &Arc<R>, gs: &[Vec<u32>]) -> I {
    Ideal::from_monomials(r, gs.iter().map(|g| Monomial::new(g))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn containment_chain(a in random_monomial_ideal(2), b in random_monomial_ideal(2)) {
        let r = ring(2);
        let (i, j) = (build(&r, &a), build(&r, &b));
        let prod = i.product(&j).unwrap();
        let meet = i.intersection(&j).unwrap();
        let colon = i.quotient(&j).unwrap();
        prop_assert!(meet.contains_ideal(&prod).unwrap());
        prop_assert!(i.contains_ideal(&meet).unwrap());
        prop_assert!(colon.contains_ideal(&i).unwrap());
        prop_assert!(i.contains_ideal(&colon.product(&j).unwrap()).unwrap());
    }

    #[test]
    fn fast_path_agrees_with_buchberger(a in random_monomial_ideal(3), b in random_monomial_ideal(3)) {
        let r = ring(3);
        let (i, j) = (build(&r, &a), build(&r, &b));
        for (fast, slow) in [
            (i.product(&j).unwrap(), i.product_with(&j, Path::General).unwrap()),
            (i.power(2).unwrap(), i.power_with(2, Path::General).unwrap()),
            (i.intersection(&j).unwrap(), i.intersection_with(&j, Path::General).unwrap()),
            (i.quotient(&j).unwrap(), i.quotient_with(&j, Path::General).unwrap()),
        ] {
            prop_assert_eq!(fast.groebner_basis().unwrap(), slow.basis_general().unwrap().polys);
        }
        prop_assert_eq!(min_gens(&i).unwrap(), min_gens_with(&i, Path::General).unwrap());
        prop_assert_eq!(colength(&i).unwrap(), colength_with(&i, Path::General).unwrap());
    }

    #[test]
    fn normal_form_is_linear_and_idempotent(c1 in -4i64..5, c2 in -4i64..5) {
        let r = ring(2);
        let (x, y) = (r.var(0), r.var(1));
        let i = Ideal::new(&r, vec![x.pow(2).sub(&y.pow(3)), x.mul(&y).add(&y.pow(2))]).unwrap();
        let f = x.pow(3).add(&y);
        let g = x.mul(&y.pow(2)).sub(&x);
        let (k1, k2) = (Rational::from_i64(c1), Rational::from_i64(c2));
        let lhs = i.normal_form(&f.scale(&k1).add(&g.scale(&k2))).unwrap();
        let rhs = i.normal_form(&f).unwrap().scale(&k1).add(&i.normal_form(&g).unwrap().scale(&k2));
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(i.normal_form(&lhs).unwrap(), lhs);
    }
}
