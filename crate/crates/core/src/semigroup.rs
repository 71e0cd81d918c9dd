//! Monomial ideals in numerical semigroup rings `k[[t^S]]`, optionally with
//! extra power-series variables `k[[t^S]][[U_1..U_r]]`, handled purely as
//! exponent combinatorics.
//!
//! Elements of the monoid `S × ℕ^r` are written `(s; u_1..u_r)`; an ideal is
//! a finite union of translates `e + (S × ℕ^r)`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::invariants::{HilbertData, SeriesKind};

/// A numerical semigroup with a membership table up to its conductor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u32>,
    conductor: u32,
    member: Vec<bool>,
}

impl NumericalSemigroup {
    pub fn new(gens: &[u32]) -> Result<Self> {
        let mut generators: Vec<u32> = gens.to_vec();
        generators.sort_unstable();
        generators.dedup();
        if generators.is_empty() || generators[0] == 0 {
            return Err(Error::Structural("semigroup generators must be positive".into()));
        }
        if generators.iter().fold(0u32, |g, &a| g.gcd(&a)) != 1 {
            return Err(Error::Structural("semigroup generators must have gcd 1".into()));
        }
        let a = generators[0] as usize;
        // every element >= conductor is in S; a run of `a` consecutive members certifies it
        let mut member = vec![true];
        let mut run = 1usize;
        let mut n = 1usize;
        while run < a {
            let is = generators.iter().any(|&g| (g as usize) <= n && member[n - g as usize]);
            member.push(is);
            run = if is { run + 1 } else { 0 };
            n += 1;
        }
        let conductor = (member.len() - run) as u32;
        member.truncate(conductor as usize + 1);
        Ok(NumericalSemigroup { generators, conductor, member })
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Least `c` with `n ∈ S` for every `n >= c`.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let n = n as usize;
        n >= self.member.len() || self.member[n]
    }

    /// Minimal generators of `S` (the given generators may be redundant).
    pub fn minimal_generators(&self) -> Vec<u32> {
        let g = &self.generators;
        g.iter()
            .cloned()
            .filter(|&a| {
                // a is redundant iff a = b + c with b, c nonzero in S
                !(1..a).any(|b| self.contains(b as i64) && self.contains((a - b) as i64))
            })
            .collect()
    }
}

/// The monoid `S × ℕ^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monoid {
    pub semigroup: NumericalSemigroup,
    pub free_vars: usize,
}

/// An element `(s; u)` of `S × ℕ^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    pub s: u32,
    pub free: Vec<u32>,
}

impl Elem {
    pub fn new(s: u32, free: &[u32]) -> Self {
        Elem { s, free: free.to_vec() }
    }

    fn add(&self, other: &Elem) -> Elem {
        Elem { s: self.s + other.s, free: self.free.iter().zip(&other.free).map(|(a, b)| a + b).collect() }
    }

    fn degree_free(&self) -> u32 {
        self.free.iter().sum()
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.free.is_empty() {
            write!(f, "t^{}", self.s)
        } else {
            let u: Vec<String> = self.free.iter().map(|e| e.to_string()).collect();
            write!(f, "(t^{}; {})", self.s, u.join(","))
        }
    }
}

impl Monoid {
    pub fn new(gens: &[u32], free_vars: usize) -> Result<Arc<Self>> {
        Ok(Arc::new(Monoid { semigroup: NumericalSemigroup::new(gens)?, free_vars }))
    }

    /// `b ∈ a + (S × ℕ^r)`.
    pub fn divides(&self, a: &Elem, b: &Elem) -> bool {
        self.semigroup.contains(b.s as i64 - a.s as i64) && a.free.iter().zip(&b.free).all(|(x, y)| x <= y)
    }

    pub fn unit(&self) -> Elem {
        Elem { s: 0, free: vec![0; self.free_vars] }
    }

    /// The generators of the maximal ideal.
    pub fn maximal_generators(&self) -> Vec<Elem> {
        let mut out: Vec<Elem> =
            self.semigroup.minimal_generators().into_iter().map(|a| Elem { s: a, free: vec![0; self.free_vars] }).collect();
        for i in 0..self.free_vars {
            let mut free = vec![0; self.free_vars];
            free[i] = 1;
            out.push(Elem { s: 0, free });
        }
        out
    }
}

/// A monomial ideal of the semigroup ring, by its minimal generators.
#[derive(Clone, PartialEq, Eq)]
pub struct SemigroupIdeal {
    monoid: Arc<Monoid>,
    gens: Vec<Elem>,
}

impl fmt::Debug for SemigroupIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl SemigroupIdeal {
    pub fn new(monoid: &Arc<Monoid>, gens: impl IntoIterator<Item = Elem>) -> Result<Self> {
        let gens: Vec<Elem> = gens.into_iter().collect();
        for g in &gens {
            if g.free.len() != monoid.free_vars {
                return Err(Error::Structural(format!("element {g} has the wrong number of free exponents")));
            }
            if !monoid.semigroup.contains(g.s as i64) {
                return Err(Error::Structural(format!("t^{} is not in the semigroup", g.s)));
            }
        }
        Ok(Self::minimalized(monoid, gens))
    }

    /// Ideal generated by `t^e` for each exponent (no free variables).
    pub fn from_exponents(monoid: &Arc<Monoid>, exps: &[u32]) -> Result<Self> {
        Self::new(monoid, exps.iter().map(|&e| Elem { s: e, free: vec![0; monoid.free_vars] }))
    }

    pub fn maximal(monoid: &Arc<Monoid>) -> Self {
        Self::minimalized(monoid, monoid.maximal_generators())
    }

    pub fn unit(monoid: &Arc<Monoid>) -> Self {
        Self::minimalized(monoid, vec![monoid.unit()])
    }

    fn minimalized(monoid: &Arc<Monoid>, gens: Vec<Elem>) -> Self {
        let set: BTreeSet<Elem> = gens.into_iter().collect();
        let all: Vec<Elem> = set.into_iter().collect();
        let gens = all
            .iter()
            .filter(|e| !all.iter().any(|f| f != *e && monoid.divides(f, e)))
            .cloned()
            .collect();
        SemigroupIdeal { monoid: monoid.clone(), gens }
    }

    pub fn monoid(&self) -> &Arc<Monoid> {
        &self.monoid
    }

    /// Minimal generators, sorted.
    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn contains(&self, e: &Elem) -> bool {
        self.gens.iter().any(|g| self.monoid.divides(g, e))
    }

    /// Membership of `t^n` (free exponents zero).
    pub fn contains_exponent(&self, n: u32) -> bool {
        self.contains(&Elem { s: n, free: vec![0; self.monoid.free_vars] })
    }

    pub fn product(&self, other: &SemigroupIdeal) -> SemigroupIdeal {
        let mut sums = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                sums.push(a.add(b));
            }
        }
        Self::minimalized(&self.monoid, sums)
    }

    pub fn power(&self, n: u32) -> SemigroupIdeal {
        let mut acc = Self::unit(&self.monoid);
        for _ in 0..n {
            acc = acc.product(self);
        }
        acc
    }

    pub fn sum(&self, other: &SemigroupIdeal) -> SemigroupIdeal {
        Self::minimalized(&self.monoid, self.gens.iter().chain(&other.gens).cloned().collect())
    }

    pub fn intersection(&self, other: &SemigroupIdeal) -> SemigroupIdeal {
        let s = &self.monoid.semigroup;
        let min_gen = s.generators()[0];
        let mut out = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                // (a + S) ∩ (b + S) in the semigroup coordinate: minimal elements lie
                // below max(a, b) + conductor + min generator
                let lo = a.s.max(b.s);
                let hi = lo + s.conductor() + min_gen;
                let free: Vec<u32> = a.free.iter().zip(&b.free).map(|(x, y)| *x.max(y)).collect();
                let mut found = Vec::new();
                for n in lo..=2 * hi {
                    if s.contains(n as i64 - a.s as i64) && s.contains(n as i64 - b.s as i64) {
                        found.push(n);
                    }
                }
                // everything above `hi` must be generated below it
                assert!(
                    found.iter().filter(|&&n| n > hi).all(|&n| found.iter().any(|&m| m <= hi && s.contains(n as i64 - m as i64))),
                    "intersection bound too small"
                );
                out.extend(found.into_iter().filter(|&n| n <= hi).map(|n| Elem { s: n, free: free.clone() }));
            }
        }
        Self::minimalized(&self.monoid, out)
    }

    /// Ideal equality (minimal generator sets are canonical).
    pub fn equals(&self, other: &SemigroupIdeal) -> bool {
        self.gens == other.gens
    }

    pub fn contains_ideal(&self, other: &SemigroupIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// `μ(I) = dim_k I/mI`, the number of minimal generators.
    pub fn mu(&self) -> usize {
        self.gens.len()
    }

    /// Ideal generated by `n`-th multiples of the generators.
    pub fn frobenius_power(&self, n: u32) -> SemigroupIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| Elem { s: g.s * n, free: g.free.iter().map(|e| e * n).collect() })
            .collect();
        Self::minimalized(&self.monoid, gens)
    }

    /// Elements of `self` outside `smaller` (for `smaller ⊆ self`), when finite.
    /// Only available without free variables, where every such set is finite
    /// for nonzero `smaller`.
    pub fn difference_len(&self, smaller: &SemigroupIdeal) -> Option<u64> {
        if self.monoid.free_vars != 0 || smaller.gens.is_empty() {
            return None;
        }
        let s = &self.monoid.semigroup;
        let top = smaller.gens.iter().map(|g| g.s).max().unwrap() + s.conductor();
        Some((0..=top).filter(|&n| self.contains_exponent(n) && !smaller.contains_exponent(n)).count() as u64)
    }

    pub fn degree_free(&self) -> u32 {
        self.gens.iter().map(|g| g.degree_free()).max().unwrap_or(0)
    }
}

/// Fiber cone series of a semigroup ideal from `μ(I^n)`, `n = 0..=nmax`.
pub fn sg_fiber_series(i: &SemigroupIdeal, nmax: usize) -> Result<HilbertData> {
    let mut values = vec![1i64];
    let mut p = SemigroupIdeal::unit(i.monoid());
    for _ in 1..=nmax {
        p = p.product(i);
        values.push(p.mu() as i64);
    }
    let h = HilbertData::from_values(SeriesKind::Fiber, values);
    if h.rational_form.is_none() {
        return Err(Error::NoStabilization { nmax });
    }
    Ok(h)
}
