use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use crate::error::{Error, Result};
use crate::exactalg::{Field, Monomial, Polynomial};

/// Limits on a single Gröbner basis computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_gens: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: 200_000, max_gens: 20_000 }
    }
}

impl Budget {
    /// Default budget with `FIBRANT_MAX_PAIRS` applied when set.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Some(v) = std::env::var("FIBRANT_MAX_PAIRS").ok().and_then(|s| s.trim().parse().ok()) {
            b.max_pairs = v;
        }
        b
    }
}

/// Full reduction of `f` by `basis`: no term of the result is divisible by
/// a leading monomial of `basis`.
pub fn reduce<K: Field>(f: &Polynomial<K>, basis: &[Polynomial<K>]) -> Polynomial<K> {
    let leads: Vec<&Monomial> = basis.iter().map(|g| g.lm().expect("nonzero basis element")).collect();
    let mut rem: Vec<(Monomial, K)> = Vec::new();
    let mut p = f.clone();
    while let Some((m, c)) = p.terms().first().cloned() {
        match leads.iter().position(|l| l.divides(&m)) {
            Some(k) => {
                let g = &basis[k];
                let q = m.div(leads[k]).expect("divisible");
                let s = c.div(g.lc().expect("nonzero")).neg();
                // the leading terms cancel exactly
                p = p.tail().add(&g.tail().mul_term(&q, &s));
            }
            None => {
                rem.push((m, c));
                p = p.tail();
            }
        }
    }
    Polynomial::from_sorted_unchecked(f.nvars(), f.order(), rem)
}

fn s_poly<K: Field>(f: &Polynomial<K>, g: &Polynomial<K>) -> Polynomial<K> {
    let (a, b) = (f.lm().unwrap(), g.lm().unwrap());
    let l = a.lcm(b);
    let fa = f.tail().mul_term(&l.div(a).unwrap(), &f.lc().unwrap().inv());
    let gb = g.tail().mul_term(&l.div(b).unwrap(), &g.lc().unwrap().inv());
    fa.sub(&gb)
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// descending leading monomial. The output does not depend on the order of
/// the input.
pub fn groebner_basis<K: Field>(gens: &[Polynomial<K>], budget: &Budget) -> Result<Vec<Polynomial<K>>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let (nvars, order) = (first.nvars(), first.order());
    let mut basis: Vec<Polynomial<K>> = Vec::new();
    let mut heap: BinaryHeap<Reverse<(u64, usize, usize, usize)>> = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut seq = 0usize;
    let mut processed = 0usize;

    let mut inputs: Vec<Polynomial<K>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    // deterministic regardless of input permutation
    inputs.sort_by(|a, b| order.compare(a.lm().unwrap(), b.lm().unwrap()).then_with(|| a.len().cmp(&b.len())));

    let mut add = |h: Polynomial<K>,
                   basis: &mut Vec<Polynomial<K>>,
                   heap: &mut BinaryHeap<Reverse<(u64, usize, usize, usize)>>,
                   pending: &mut HashSet<(usize, usize)>|
     -> Result<()> {
        let k = basis.len();
        if k + 1 > budget.max_gens {
            return Err(Error::ResourceLimit(format!("groebner basis exceeded {} generators", budget.max_gens)));
        }
        let hl = h.lm().unwrap().clone();
        for i in 0..k {
            let l = basis[i].lm().unwrap().lcm(&hl);
            heap.push(Reverse((l.degree(), seq, i, k)));
            seq += 1;
            pending.insert((i, k));
        }
        basis.push(h);
        Ok(())
    };

    for g in inputs {
        let h = reduce(&g, &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![Polynomial::constant(nvars, order, K::one())]);
        }
        add(h.monic(), &mut basis, &mut heap, &mut pending)?;
    }

    while let Some(Reverse((_, _, i, j))) = heap.pop() {
        pending.remove(&(i, j));
        processed += 1;
        if processed > budget.max_pairs {
            return Err(Error::ResourceLimit(format!("groebner basis exceeded {} pairs", budget.max_pairs)));
        }
        let (a, b) = (basis[i].lm().unwrap(), basis[j].lm().unwrap());
        if a.coprime(b) {
            continue;
        }
        let l = a.lcm(b);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().unwrap().divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let h = reduce(&s_poly(&basis[i], &basis[j]), &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![Polynomial::constant(nvars, order, K::one())]);
        }
        add(h.monic(), &mut basis, &mut heap, &mut pending)?;
    }

    Ok(interreduce(basis))
}

/// Turns a Gröbner basis into the reduced one.
pub fn interreduce<K: Field>(mut basis: Vec<Polynomial<K>>) -> Vec<Polynomial<K>> {
    basis.retain(|g| !g.is_zero());
    let Some(first) = basis.first() else {
        return basis;
    };
    let order = first.order();
    basis.sort_by(|a, b| order.compare(a.lm().unwrap(), b.lm().unwrap()));
    let mut minimal: Vec<Polynomial<K>> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|k| k.lm().unwrap().divides(g.lm().unwrap())) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let others: Vec<Polynomial<K>> =
            minimal.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, g)| g.clone()).collect();
        let g = &minimal[idx];
        let head = Polynomial::term(order, g.lm().unwrap().clone(), g.lc().unwrap().clone());
        out.push(head.add(&reduce(&g.tail(), &others)).monic());
    }
    out.sort_by(|a, b| order.compare(b.lm().unwrap(), a.lm().unwrap()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Rational, TermOrder};

    type P = Polynomial<Rational>;
    const G: TermOrder = TermOrder::Grevlex;

    fn v(i: usize) -> P {
        P::var(2, G, i)
    }

    fn gb(gens: &[P]) -> Vec<P> {
        groebner_basis(gens, &Budget::default()).unwrap()
    }

    #[test]
    fn already_a_basis() {
        let (x, y) = (v(0), v(1));
        let b = gb(&[x.pow(2), x.mul(&y)]);
        assert_eq!(b, vec![x.pow(2), x.mul(&y)]);
    }

    #[test]
    fn linear_span() {
        let (x, y) = (v(0), v(1));
        assert_eq!(gb(&[x.add(&y), x.sub(&y)]), vec![x.clone(), y.clone()]);
    }

    #[test]
    fn quotient_relations_form_a_basis() {
        let (x, y) = (v(0), v(1));
        let b = gb(&[x.mul(&y), y.pow(3)]);
        assert_eq!(b, vec![y.pow(3), x.mul(&y)]);
        // brute force: every monomial multiple of a generator reduces to zero
        for a in 0..4 {
            for c in 0..4 {
                let m = P::monomial(G, Monomial::new(&[a, c]));
                assert!(reduce(&m.mul(&x).mul(&y), &b).is_zero());
            }
        }
    }

    #[test]
    fn membership_by_reduction() {
        let (x, y) = (v(0), v(1));
        let b = gb(&[x.pow(2).sub(&y), y.clone()]);
        assert!(reduce(&x.pow(2), &b).is_zero());
        let b = gb(&[x.pow(2), x.mul(&y)]);
        assert_eq!(reduce(&x, &b), x);
    }

    #[test]
    fn permutation_invariance() {
        let (x, y) = (v(0), v(1));
        let f = x.pow(3).sub(&y.pow(2).mul(&x));
        let g = x.mul(&y).add(&y.pow(3));
        let h = x.pow(2).add(&y);
        assert_eq!(gb(&[f.clone(), g.clone(), h.clone()]), gb(&[h, f, g]));
    }

    #[test]
    fn budget_is_enforced() {
        let (x, y) = (v(0), v(1));
        let tiny = Budget { max_pairs: 0, max_gens: 100 };
        let r = groebner_basis(&[x.pow(2).add(&y), x.mul(&y).add(&x)], &tiny);
        assert!(matches!(r, Err(Error::ResourceLimit(_))));
    }
}
