use std::collections::{HashMap, HashSet};

use crate::exactalg::{Field, Monomial, Polynomial};

/// A monomial ideal given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

/// Outcome of counting standard monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Count {
    Finite(u64),
    Infinite,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        MonomialIdeal { nvars, gens: minimalize(gens.into_iter().collect()) }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: vec![Monomial::one(nvars)] }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Minimal generators in ascending lexicographic exponent order.
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Drops the terms lying in the ideal; this is the normal form modulo a
    /// monomial ideal under any term order.
    pub fn normal_form<K: Field>(&self, f: &Polynomial<K>) -> Polynomial<K> {
        let terms: Vec<(Monomial, K)> = f.terms().iter().filter(|(m, _)| !self.contains(m)).cloned().collect();
        Polynomial::from_sorted_unchecked(f.nvars(), f.order(), terms)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().chain(other.gens.iter()).cloned())
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut prods = HashSet::new();
        for a in &self.gens {
            for b in &other.gens {
                prods.insert(a.mul(b));
            }
        }
        MonomialIdeal::new(self.nvars, prods)
    }

    pub fn power(&self, n: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.nvars);
        for _ in 0..n {
            acc = acc.product(self);
        }
        acc
    }

    pub fn intersection(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut lcms = HashSet::new();
        for a in &self.gens {
            for b in &other.gens {
                lcms.insert(a.lcm(b));
            }
        }
        MonomialIdeal::new(self.nvars, lcms)
    }

    /// `(self : m)`.
    pub fn colon(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().map(|g| g.colon(m)))
    }

    /// `(self : other)`, the intersection of the colons by each generator.
    pub fn colon_ideal(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.nvars);
        for g in &other.gens {
            acc = acc.intersection(&self.colon(g));
        }
        acc
    }

    /// True when every variable has a pure power in the ideal.
    pub fn is_artinian(&self) -> bool {
        (0..self.nvars).all(|i| self.pure_power(i).is_some())
    }

    /// Least `a` with `x_i^a` in the ideal.
    pub fn pure_power(&self, i: usize) -> Option<u32> {
        self.gens
            .iter()
            .filter(|g| g.exps().iter().enumerate().all(|(j, &e)| j == i || e == 0))
            .map(|g| g.exp(i))
            .min()
    }

    /// Number of monomials outside the ideal.
    pub fn count_standard(&self) -> Count {
        if !self.is_artinian() {
            return Count::Infinite;
        }
        Count::Finite(count_standard(self.nvars, &self.gens))
    }

    /// Maximal degree of a standard monomial (the ideal must be artinian).
    pub fn max_standard_degree(&self) -> Option<u64> {
        if !self.is_artinian() || self.is_unit() {
            return None;
        }
        let mut best = 0;
        self.for_each_standard(|m| best = best.max(m.degree()));
        Some(best)
    }

    /// Visits every standard monomial of an artinian ideal.
    pub fn for_each_standard(&self, mut f: impl FnMut(&Monomial)) {
        assert!(self.is_artinian(), "standard monomials of a non-artinian ideal");
        let mut stack = vec![Monomial::one(self.nvars)];
        let mut seen = HashSet::new();
        while let Some(m) = stack.pop() {
            if self.contains(&m) || !seen.insert(m.clone()) {
                continue;
            }
            f(&m);
            for i in 0..self.nvars {
                stack.push(m.mul(&Monomial::var(self.nvars, i, 1)));
            }
        }
    }

    /// Monomials in `self` but not in `smaller`; `None` when there are
    /// infinitely many. Requires `smaller ⊆ self` for a meaningful answer.
    pub fn difference(&self, smaller: &MonomialIdeal) -> Option<Vec<Monomial>> {
        for a in &self.gens {
            if !smaller.colon(a).is_artinian() {
                return None;
            }
        }
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        let mut stack: Vec<Monomial> = self.gens.clone();
        while let Some(m) = stack.pop() {
            if smaller.contains(&m) || !seen.insert(m.clone()) {
                continue;
            }
            for i in 0..self.nvars {
                stack.push(m.mul(&Monomial::var(self.nvars, i, 1)));
            }
            out.push(m);
        }
        out.sort();
        Some(out)
    }

    /// Index of each minimal generator, for coordinate lookups.
    pub fn index(&self) -> HashMap<Monomial, usize> {
        self.gens.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect()
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|g| g.degree());
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept.dedup();
    kept
}

/// Counts standard monomials of an artinian monomial ideal by slicing along
/// the last variable.
fn count_standard(nvars: usize, gens: &[Monomial]) -> u64 {
    if gens.iter().any(|g| g.is_one()) {
        return 0;
    }
    if nvars == 0 {
        return 1;
    }
    if nvars == 1 {
        return gens.iter().map(|g| g.exp(0)).min().expect("artinian") as u64;
    }
    let last = nvars - 1;
    let top = gens
        .iter()
        .filter(|g| g.exps()[..last].iter().all(|&e| e == 0))
        .map(|g| g.exp(last))
        .min()
        .expect("artinian");
    let mut total = 0;
    for e in 0..top {
        // monomials m in the first nvars-1 variables with m * x_last^e outside the ideal
        let slice: Vec<Monomial> = gens
            .iter()
            .filter(|g| g.exp(last) <= e)
            .map(|g| g.drop_vars(last..nvars))
            .collect();
        total += count_standard(last, &minimalize(slice));
    }
    total
}
