//! Reduction numbers and element tests on the worked examples, with
//! exponent-set oracles for the monomial cases.

use std::collections::BTreeSet;
use std::sync::Arc;

use fibrant::exactalg::{Field, Monomial, Rational};
use fibrant::groebner::Ideal;
use fibrant::invariants::{extract_coefficients, fiber_hilbert};
use fibrant::localring::{colength, AmbientRing};
use fibrant::reductions::*;
use fibrant::semigroup::{Elem, Monoid, SemigroupIdeal};
use fibrant::Error;

type R = AmbientRing<Rational>;

fn ring(names: &[&str], rels: &[&[u32]]) -> Arc<R> {
    let free = R::polynomial_ring(names);
    let q = rels.iter().map(|e| free.monomial(e)).collect();
    R::new(free.names().to_vec(), q).unwrap()
}

fn mono(r: &Arc<R>, ms: &[&[u32]]) -> Ideal<Rational> {
    Ideal::from_monomials(r, ms.iter().map(|e| Monomial::new(e))).unwrap()
}

/// Monomial ideals as generator lists of exponent vectors, modulo a
/// monomial relation ideal; membership is tested on explicit monomials.
#[derive(Clone)]
struct Oracle {
    rels: Vec<Vec<u32>>,
    gens: Vec<Vec<u32>>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl Oracle {
    fn new(rels: &[&[u32]], gens: &[Vec<u32>]) -> Self {
        Oracle { rels: rels.iter().map(|r| r.to_vec()).collect(), gens: gens.to_vec() }
    }
    fn zero_in_ring(&self, m: &[u32]) -> bool {
        self.rels.iter().any(|r| divides(r, m))
    }
    fn contains(&self, m: &[u32]) -> bool {
        self.zero_in_ring(m) || self.gens.iter().any(|g| divides(g, m))
    }
    fn with(&self, gens: Vec<Vec<u32>>) -> Self {
        let mut gens: Vec<Vec<u32>> = gens.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let all = gens.clone();
        gens.retain(|g| !all.iter().any(|h| h != g && divides(h, g)));
        Oracle { rels: self.rels.clone(), gens }
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                out.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        self.with(out)
    }
    fn pow(&self, n: u32) -> Self {
        let nv = self.gens[0].len();
        let mut acc = self.with(vec![vec![0; nv]]);
        for _ in 0..n {
            acc = acc.times(self);
        }
        acc
    }
    /// Standard monomials up to total degree `d`.
    fn standard(&self, nv: usize, d: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nv];
        fn rec(o: &Oracle, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == cur.len() {
                if !o.zero_in_ring(cur) {
                    out.push(cur.clone());
                }
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(o, i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        rec(self, 0, d, &mut cur, &mut out);
        out
    }
}

fn nilpotent() -> Arc<R> {
    ring(&["x1", "x2", "x3"], &[&[2, 0, 0], &[1, 1, 0]])
}

const NIL_RELS: &[&[u32]] = &[&[2, 0, 0], &[1, 1, 0]];

fn unit_vec(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Oracle for `x_i` filter-regular on `F(m)` at degree `j`: multiplication by
/// a variable is injective on the degree-`j` standard monomials iff none of
/// them is killed.
fn oracle_variable_filter_regular(i: usize, j: u32) -> bool {
    let m = Oracle::new(NIL_RELS, &(0..3).map(|k| unit_vec(3, k)).collect::<Vec<_>>());
    m.standard(3, j).into_iter().filter(|s| s.iter().sum::<u32>() == j).all(|mut s| {
        s[i] += 1;
        !m.zero_in_ring(&s)
    })
}

#[test]
fn nilpotent_ring_filter_regular() {
    let a = nilpotent();
    let m = Ideal::maximal(&a);
    let w = Windows::default();
    let (x1, x3) = (a.var(0), a.var(2));
    for j in w.j_window.clone() {
        for (k, x) in [(0, &x1), (2, &x3)] {
            let lib = fiber_multiplication_injective(x, &m, j).unwrap().is_none();
            assert_eq!(lib, oracle_variable_filter_regular(k, j as u32));
            assert_eq!(lib, filter_regular_colon_check(x, &m, j).unwrap());
        }
    }
    assert_eq!(is_filter_regular(&x3, &m, &w).unwrap().status, Status::Holds);
    let rep = is_filter_regular(&x1, &m, &w).unwrap();
    assert_eq!(rep.status, Status::Fails);
    assert!(rep.witness.is_some());
    assert_eq!(power_filter_regular_transfer(&x3, &m, 2, &w).unwrap().status, Status::Holds);
    assert_eq!(power_filter_regular_transfer(&x1, &m, 2, &w).unwrap().status, Status::Fails);
}

#[test]
fn nilpotent_ring_superficial() {
    let a = nilpotent();
    let m = Ideal::maximal(&a);
    let w = Windows::default();
    assert_eq!(is_superficial(&a.var(2), &m, &w).unwrap().status, Status::Holds);
    let rep = is_superficial(&a.var(0), &m, &w).unwrap();
    assert_eq!(rep.status, Status::Fails);
    // oracle: x1 x2 = 0, so x2 lies in (m^3 : x1) ∩ m but not in m^2
    let o = Oracle::new(NIL_RELS, &(0..3).map(|k| unit_vec(3, k)).collect::<Vec<_>>());
    assert!(o.zero_in_ring(&[1, 1, 0]) && !o.pow(2).contains(&[0, 1, 0]));
    let wit = rep.witness.unwrap();
    assert_eq!((wit.point, wit.element.as_str()), (vec![2], "x2"));
}

#[test]
fn nilpotent_ring_rees_superficial_matches_oracle() {
    let a = nilpotent();
    let m = Ideal::maximal(&a);
    let w = Windows::default();
    let mo = Oracle::new(NIL_RELS, &(0..3).map(|k| unit_vec(3, k)).collect::<Vec<_>>());
    for (k, x) in [(0usize, a.var(0)), (2, a.var(2))] {
        let rep = is_rees_superficial(&x, &m, 1, &w).unwrap();
        let xo = mo.with(vec![unit_vec(3, k)]);
        // (x) ∩ m^{r+s} against x m^{r-1+s} on all standard monomials of low degree
        let mut oracle_holds = true;
        for ev in &rep.evidence {
            let t = (ev.point[0] + ev.point[1]) as u32;
            let (lhs_a, lhs_b, rhs) = (xo.clone(), mo.pow(t), xo.times(&mo.pow(t - 1)));
            let pt_holds = mo
                .standard(3, t + 4)
                .iter()
                .all(|s| (lhs_a.contains(s) && lhs_b.contains(s)) == rhs.contains(s));
            assert_eq!(ev.holds, pt_holds, "x{} at {:?}", k + 1, ev.point);
            oracle_holds &= pt_holds;
        }
        assert_eq!(rep.status == Status::Holds, oracle_holds);
        assert_eq!(rep.status, Status::Holds);
    }
}

#[test]
fn nilpotent_ring_regular_sequences_and_grade() {
    let a = nilpotent();
    assert!(!is_regular_sequence(&a, &[a.var(0), a.var(1)]).unwrap());
    assert!(is_regular_sequence(&a, &[a.var(2)]).unwrap());
    let g = grade_evidence(&Ideal::maximal(&a), &Windows::default()).unwrap();
    assert_eq!(g.exact, Some(1));
}

#[test]
fn nilpotent_ring_a_invariant_sign() {
    let a = nilpotent();
    let m = Ideal::maximal(&a);
    let j = Ideal::new(&a, vec![a.var(1), a.var(2)]).unwrap();
    assert_eq!(reduction_number(&j, &m, 10, 2).unwrap().red_number, 1);
    let (sign, red, _) = a_invariant_sign(&m, &j, 2, &Windows::default(), None).unwrap();
    assert_eq!((sign, red), (Sign::Negative, Some(1)));
}

/// Two-variable reduction number oracle on exponent sets.
fn oracle_red(j: &Oracle, i: &Oracle, bound: u32) -> Option<u32> {
    let box_deg = |o: &Oracle| o.gens.iter().map(|g| g.iter().sum::<u32>()).max().unwrap();
    (0..=bound).find(|&n| {
        let lhs = j.times(&i.pow(n));
        let rhs = i.pow(n + 1);
        let d = box_deg(&rhs) + 2;
        rhs.standard(2, d).iter().all(|s| lhs.contains(s) == rhs.contains(s))
    })
}

#[test]
fn sparse_seventh_asymptotic_reduction_number() {
    let r = ring(&["x", "y"], &[]);
    let gens: Vec<Vec<u32>> = vec![vec![7, 0], vec![6, 1], vec![1, 6], vec![0, 7]];
    let i = mono(&r, &[&[7, 0], &[6, 1], &[1, 6], &[0, 7]]);
    let j = mono(&r, &[&[7, 0], &[0, 7]]);
    // with the monomial reduction the values run 5, 3, 2, 2, 1, 1, 1, 1
    let w = Windows { n_window: 1..=8, ..Windows::default() };
    let (sign, red, report) = a_invariant_sign(&i, &j, 2, &w, None).unwrap();
    let generic = find_minimal_reduction(&i, 2, &w).unwrap();
    let gw = Windows { n_window: 1..=4, ..Windows::default() };
    let (_, _, greport) = a_invariant_sign(&i, &generic.j, 2, &gw, None).unwrap();
    assert_eq!(greport.evidence, report.evidence[..4]);
    let io = Oracle::new(&[], &gens);
    for (ev, n) in report.evidence.iter().zip(1u32..) {
        let jn = io.with(vec![vec![7 * n, 0], vec![0, 7 * n]]);
        let expect = oracle_red(&jn, &io.pow(n), 10).map(|r| format!("red = {r}"));
        assert_eq!(ev.detail, expect, "n = {n}");
    }
    assert_eq!((sign, red), (Sign::Negative, Some(1)));
    // f_1 = f_0 - 1 when the sign is negative, the spread is two and the grade is two
    let f = extract_coefficients(&fiber_hilbert(&i, 12).unwrap()).unwrap().entries;
    assert_eq!(f[1], f[0] - 1);
}

#[test]
fn random_minimal_reduction_is_deterministic() {
    let r = ring(&["x", "y"], &[]);
    let i = mono(&r, &[&[7, 0], &[6, 1], &[1, 6], &[0, 7]]);
    let w = Windows::default();
    let a = find_minimal_reduction(&i, 2, &w).unwrap();
    let b = find_minimal_reduction(&i, 2, &w).unwrap();
    assert_eq!(a.j.gens(), b.j.gens());
    assert_eq!((a.trials, a.red_number), (b.trials, b.red_number));
    assert_eq!(a.verified_at.len(), 3);
}

fn three_variable_gap() -> (Arc<R>, Ideal<Rational>, Ideal<Rational>) {
    let r = ring(&["X", "Y", "Z"], &[]);
    let i = mono(&r, &[&[4, 0, 0], &[3, 1, 0], &[1, 3, 0], &[0, 4, 0], &[0, 0, 1]]);
    let j = mono(&r, &[&[4, 0, 0], &[0, 4, 0], &[0, 0, 1]]);
    (r, i, j)
}

#[test]
fn three_variable_example_reductions() {
    let (_, i, j) = three_variable_gap();
    let rec = reduction_number(&j, &i, 10, 2).unwrap();
    assert_eq!(rec.red_number, 2);
    let (sign, red, _) = a_invariant_sign(&i, &j, 3, &Windows::default(), None).unwrap();
    assert_eq!((sign, red), (Sign::Negative, Some(2)));
    let (rr, _) = ratliff_rush(&i, 8).unwrap();
    assert!(rr.equals(&i).unwrap());
}

#[test]
fn ratliff_rush_strictly_enlarges_plane_ideal() {
    let r = ring(&["x", "y"], &[]);
    let q = mono(&r, &[&[4, 0], &[3, 1], &[1, 3], &[0, 4]]);
    let (qt, _) = ratliff_rush(&q, 8).unwrap();
    assert!(qt.contains_ideal(&q).unwrap());
    assert!(!q.contains_ideal(&qt).unwrap());
    // oracle: x^2 y^2 q ⊆ q^2, so x^2 y^2 lies in the closure
    let qo = Oracle::new(&[], &[vec![4, 0], vec![3, 1], vec![1, 3], vec![0, 4]]);
    let prod = qo.with(vec![vec![2, 2]]).times(&qo);
    assert!(prod.gens.iter().all(|g| qo.pow(2).contains(g)));
    assert!(qt.contains(&r.monomial(&[2, 2])).unwrap());
    for n in 3..=5 {
        assert_eq!(colength(&qt.power(n).unwrap()).unwrap(), colength(&q.power(n).unwrap()).unwrap());
    }
}

#[test]
fn valabrega_valla_cases() {
    let (_, i, _) = three_variable_gap();
    assert_eq!(valabrega_valla(&i, &i, 1..=4).unwrap().status, Status::Holds);
    let t = Monoid::new(&[6, 11, 15, 31], 0).unwrap();
    let k = SemigroupIdeal::from_exponents(&t, &[6, 11, 31]).unwrap();
    let l = SemigroupIdeal::from_exponents(&t, &[6]).unwrap();
    assert_eq!(valabrega_valla(&l, &k, 2..=2).unwrap().status, Status::Holds);
    assert_eq!(reduction_number(&l, &k, 10, 2).unwrap().red_number, 2);
    // J = (x, y^2) is not a reduction of m; y^2 lies in m^2 ∩ J but not in J m
    let r = ring(&["x", "y"], &[]);
    let m = Ideal::maximal(&r);
    let bad = mono(&r, &[&[1, 0], &[0, 2]]);
    let rep = valabrega_valla(&bad, &m, 1..=3).unwrap();
    assert_eq!(rep.status, Status::Fails);
    let mo = Oracle::new(&[], &[vec![1, 0], vec![0, 1]]);
    let jo = mo.with(vec![vec![1, 0], vec![0, 2]]);
    assert!(mo.pow(2).contains(&[0, 2]) && jo.contains(&[0, 2]) && !jo.times(&mo).contains(&[0, 2]));
    let wit = rep.witness.unwrap();
    assert_eq!((wit.point, wit.element.as_str()), (vec![2], "y^2"));
}

#[test]
fn dimension_three_quotient_v2_infinity() {
    let a = ring(&["x", "y", "u", "v"], &[&[1, 1, 0, 0], &[0, 3, 0, 0]]);
    let m = Ideal::maximal(&a);
    let j = Ideal::new(&a, vec![a.var(0), a.var(2), a.var(3)]).unwrap();
    assert_eq!(reduction_number(&j, &m, 10, 2).unwrap().red_number, 2);
    let rep = v2_infinity(&m, &j, 1..=3).unwrap();
    assert_eq!(rep.status, Status::Holds);
    let g = grade_evidence(&m, &Windows::default()).unwrap();
    assert_eq!(g.exact, Some(2));
}

#[test]
fn v2_infinity_fails_for_non_reduction() {
    // m^{2n} ∩ (x^n y^n) = (x^n y^n), which is not inside x^n y^n m^n
    let r = ring(&["x", "y"], &[]);
    let m = Ideal::maximal(&r);
    let j = mono(&r, &[&[1, 1]]);
    let rep = v2_infinity(&m, &j, 1..=3).unwrap();
    assert_eq!(rep.status, Status::Fails);
    let mo = Oracle::new(&[], &[vec![1, 0], vec![0, 1]]);
    for n in 1..=3u32 {
        let jn = mo.with(vec![vec![n, n]]);
        assert!(mo.pow(2 * n).contains(&[n, n]) && !jn.times(&mo.pow(n)).contains(&[n, n]));
        assert!(!rep.evidence[n as usize - 1].holds);
    }
}

#[test]
fn semigroup_extension_v2_infinity() {
    let t = Monoid::new(&[6, 11, 15, 31], 2).unwrap();
    let e = |s: u32, u: u32, v: u32| Elem::new(s, &[u, v]);
    let i = SemigroupIdeal::new(&t, [e(6, 0, 0), e(11, 0, 0), e(31, 0, 0), e(0, 1, 0), e(0, 0, 1)]).unwrap();
    let j = SemigroupIdeal::new(&t, [e(6, 0, 0), e(0, 1, 0), e(0, 0, 1)]).unwrap();
    assert_eq!(reduction_number(&j, &i, 10, 2).unwrap().red_number, 2);
    assert_eq!(v2_infinity(&i, &j, 1..=3).unwrap().status, Status::Holds);
}

#[test]
fn containment_is_checked() {
    let r = ring(&["x", "y"], &[]);
    let i = mono(&r, &[&[2, 0], &[0, 2]]);
    let j = Ideal::maximal(&r);
    assert!(matches!(reduction_number(&j, &i, 4, 2), Err(Error::Containment(_))));
    let x = r.var(0).scale(&Rational::from_i64(2));
    assert!(matches!(is_superficial(&x, &i, &Windows::default()), Err(Error::HypothesisViolation(_))));
}
