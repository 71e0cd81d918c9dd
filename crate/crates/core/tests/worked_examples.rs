//! Fiber cone and Hilbert series of the standard worked examples.

use std::sync::Arc;
use std::time::Instant;

use fibrant::exactalg::{Monomial, Rational};
use fibrant::groebner::Ideal;
use fibrant::invariants::{assoc_hilbert, extract_coefficients, fiber_hilbert, hilbert_samuel, veronese};
use fibrant::localring::{min_gens, quotient_dim, AmbientRing, Length};
use fibrant::semigroup::{sg_fiber_series, Elem, Monoid, SemigroupIdeal};

type R = AmbientRing<Rational>;

fn ring(names: &[&str], rels: &[&[u32]]) -> Arc<R> {
    let free = R::polynomial_ring(names);
    let q = rels.iter().map(|e| free.monomial(e)).collect();
    R::new(free.names().to_vec(), q).unwrap()
}

fn mono(r: &Arc<R>, ms: &[&[u32]]) -> Ideal<Rational> {
    Ideal::from_monomials(r, ms.iter().map(|e| Monomial::new(e))).unwrap()
}

fn sparse_seventh() -> Ideal<Rational> {
    let r = ring(&["x", "y"], &[]);
    mono(&r, &[&[7, 0], &[6, 1], &[1, 6], &[0, 7]])
}

#[test]
fn nilpotent_ring_maximal_ideal() {
    let a = ring(&["x1", "x2", "x3"], &[&[2, 0, 0], &[1, 1, 0]]);
    let m = Ideal::maximal(&a);
    let f = fiber_hilbert(&m, 12).unwrap();
    let form = f.rational_form.clone().unwrap();
    assert_eq!(form.numerator, vec![1, 1, -1]);
    assert_eq!(form.denom_exp, 2);
    assert_eq!(extract_coefficients(&f).unwrap().entries, vec![1, -1]);
    // G(m) and F(m) coincide for the maximal ideal
    let g = assoc_hilbert(&m, 12).unwrap();
    assert_eq!(g.rational_form, f.rational_form);
    let x = Ideal::new(&a, vec![a.var(0)]).unwrap();
    assert!(assoc_hilbert(&x, 12).is_err());
    assert_eq!(quotient_dim(&m, &m.power(2).unwrap()).unwrap(), Length::Finite(3));
}

#[test]
fn sparse_seventh_fiber_and_hilbert_samuel() {
    let start = Instant::now();
    let i = sparse_seventh();
    let f = fiber_hilbert(&i, 12).unwrap();
    assert_eq!(f.rational_form.as_ref().unwrap().numerator, vec![1, 2, 2, 2, 2, 2, -4]);
    assert_eq!(extract_coefficients(&f).unwrap().entries, vec![7, 6]);
    let hs = hilbert_samuel(&i, 10).unwrap();
    let e = extract_coefficients(&hs).unwrap().entries;
    assert_eq!(e.len(), 3);
    assert_eq!(e[2], 0);
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn sparse_seventh_veronese_matches_powers() {
    let i = sparse_seventh();
    let f = fiber_hilbert(&i, 36).unwrap();
    for n in [2u32, 3] {
        let direct = fiber_hilbert(&i.power(n).unwrap(), 12).unwrap();
        let v = veronese(&f, n as usize).unwrap();
        assert_eq!(v.rational_form, direct.rational_form);
        assert_eq!(&v.values[..=12], &direct.values[..]);
    }
}

#[test]
fn invariance_of_first_difference_for_powers() {
    // f_1(I^n) - f_0(I^n) + 1 does not depend on n for spread-two ideals
    let i = sparse_seventh();
    let mut seen = Vec::new();
    for n in 1..=3u32 {
        let f = extract_coefficients(&fiber_hilbert(&i.power(n).unwrap(), 12).unwrap()).unwrap().entries;
        seen.push(f[1] - f[0] + 1);
    }
    assert!(seen.iter().all(|&v| v == seen[0]), "{seen:?}");
    assert_eq!(seen[0], 0);
}

#[test]
fn three_variable_monomial_ideal() {
    let r = ring(&["x", "y", "z"], &[]);
    let i = mono(&r, &[&[4, 0, 0], &[3, 1, 0], &[1, 3, 0], &[0, 4, 0], &[0, 0, 1]]);
    let f = fiber_hilbert(&i, 12).unwrap();
    assert_eq!(f.rational_form.as_ref().unwrap().numerator, vec![1, 2, 2, -1]);
    assert_eq!(f.rational_form.as_ref().unwrap().denom_exp, 3);
    assert_eq!(extract_coefficients(&f).unwrap().entries, vec![4, 3, -1]);
}

#[test]
fn quotient_by_xy_and_y_cubed() {
    let a = ring(&["x", "y", "u", "v"], &[&[1, 1, 0, 0], &[0, 3, 0, 0]]);
    let m = Ideal::maximal(&a);
    let f = fiber_hilbert(&m, 12).unwrap();
    assert_eq!(f.rational_form.as_ref().unwrap().numerator, vec![1, 1, 0, -1]);
    assert_eq!(extract_coefficients(&f).unwrap().entries, vec![1, -2, -3]);
    let g = assoc_hilbert(&m, 12).unwrap();
    assert_eq!(g.rational_form, f.rational_form);
}

#[test]
fn simple_series() {
    let r = ring(&["x", "y"], &[]);
    let m = Ideal::maximal(&r);
    let f = fiber_hilbert(&m, 12).unwrap();
    assert_eq!(&f.values[..4], &[1, 2, 3, 4]);
    assert_eq!(f.rational_form.as_ref().unwrap().numerator, vec![1]);
    let hs = hilbert_samuel(&m, 8).unwrap();
    assert_eq!(&hs.values[..3], &[1, 3, 6]);
    // (x^2, y): colength of I^{n+1} is 2(n+1), checked against a standard-monomial count
    let i = mono(&r, &[&[2, 0], &[0, 1]]);
    let hs = hilbert_samuel(&i, 8).unwrap();
    for (n, v) in hs.values.iter().enumerate() {
        let mut count = 0;
        let p = (n + 1) as u32;
        for a in 0..=2 * p {
            for b in 0..=p {
                // x^a y^b in (x^2, y)^{n+1} iff floor(a/2) + b >= n+1
                if a / 2 + b < p {
                    count += 1;
                }
            }
        }
        assert_eq!(*v, count);
    }
    assert_eq!(min_gens(&m.power(5).unwrap()).unwrap(), 6);
}

#[test]
fn semigroup_ring_example() {
    let start = Instant::now();
    let t = Monoid::new(&[6, 11, 15, 31], 0).unwrap();
    let k = SemigroupIdeal::from_exponents(&t, &[6, 11, 31]).unwrap();
    let l = SemigroupIdeal::from_exponents(&t, &[6]).unwrap();
    let m = SemigroupIdeal::maximal(&t);
    assert!(k.power(3).equals(&l.product(&k.power(2))));
    assert!(k.power(2).intersection(&l).equals(&l.product(&k)));
    assert!(m.product(&k.power(2)).contains_exponent(37));
    assert!(!m.product(&l).product(&k).contains_exponent(37));
    assert_eq!(l.product(&k).gens().iter().map(|e| e.s).collect::<Vec<_>>(), vec![12, 17, 37]);
    let f = sg_fiber_series(&k, 12).unwrap();
    let form = f.rational_form.unwrap();
    assert_eq!((form.numerator, form.denom_exp), (vec![1, 2], 1));

    // adjoining two power-series variables multiplies the series by 1/(1-z)^2
    let t2 = Monoid::new(&[6, 11, 15, 31], 2).unwrap();
    let e = |s: u32, u: u32, v: u32| Elem::new(s, &[u, v]);
    let i = SemigroupIdeal::new(&t2, [e(6, 0, 0), e(11, 0, 0), e(31, 0, 0), e(0, 1, 0), e(0, 0, 1)]).unwrap();
    let lifted = sg_fiber_series(&i, 12).unwrap().rational_form.unwrap();
    assert_eq!((lifted.numerator, lifted.denom_exp), (vec![1, 2], 3));
    assert!(start.elapsed().as_secs_f64() < 1.0);
}
