//! Gröbner bases, normal forms and ideal arithmetic.
//!
//! Ideals live in an [`AmbientRing`] `R/q`; every computation adjoins the
//! generators of `q`. When the ideal and `q` are both monomial, the
//! combinatorial routines of [`MonomialIdeal`] are used unless the caller
//! asks for the general path.

mod buchberger;
mod monomial_ideal;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

pub use buchberger::{groebner_basis, interreduce, reduce, Budget};
pub use monomial_ideal::{Count, MonomialIdeal};

use crate::error::{Error, Result};
use crate::exactalg::{Field, Monomial, Polynomial, TermOrder};
use crate::localring::AmbientRing;

/// Which algorithm family an operation may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Path {
    /// Monomial fast path when applicable, Buchberger otherwise.
    #[default]
    Auto,
    /// Always go through Gröbner bases and elimination.
    General,
}

/// Reduced Gröbner basis of `U + q` together with its leading-term ideal.
#[derive(Clone, Debug)]
pub struct Basis<K: Field> {
    pub polys: Vec<Polynomial<K>>,
    pub leading: MonomialIdeal,
}

impl<K: Field> Basis<K> {
    fn from_polys(nvars: usize, polys: Vec<Polynomial<K>>) -> Self {
        let leading = MonomialIdeal::new(nvars, polys.iter().map(|g| g.lm().unwrap().clone()));
        Basis { polys, leading }
    }

    /// True when the basis consists of monomials only.
    pub fn is_monomial(&self) -> bool {
        self.polys.iter().all(|g| g.is_monomial())
    }

    pub fn normal_form(&self, f: &Polynomial<K>) -> Polynomial<K> {
        if self.is_monomial() {
            self.leading.normal_form(f)
        } else {
            reduce(f, &self.polys)
        }
    }
}

struct Inner<K: Field> {
    ring: Arc<AmbientRing<K>>,
    gens: Vec<Polynomial<K>>,
    monomial: bool,
    basis: OnceLock<Result<Arc<Basis<K>>>>,
    powers: Mutex<HashMap<u32, Ideal<K>>>,
}

/// An ideal of an ambient ring, with memoized Gröbner basis and powers.
///
/// Cloning is cheap and shares the caches.
#[derive(Clone)]
pub struct Ideal<K: Field>(Arc<Inner<K>>);

impl<K: Field> fmt::Debug for Ideal<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({})", self.render())
    }
}

impl<K: Field> Ideal<K> {
    /// The ideal generated by `gens`. Zero generators and duplicates are
    /// dropped; all generators must live in `ring`.
    pub fn new(ring: &Arc<AmbientRing<K>>, gens: Vec<Polynomial<K>>) -> Result<Self> {
        for g in &gens {
            ring.check(g)?;
        }
        Ok(Self::from_checked(ring, gens))
    }

    fn from_checked(ring: &Arc<AmbientRing<K>>, gens: Vec<Polynomial<K>>) -> Self {
        let mut out: Vec<Polynomial<K>> = Vec::with_capacity(gens.len());
        for g in gens {
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        let monomial = out.iter().all(|g| g.is_monomial());
        Ideal(Arc::new(Inner {
            ring: ring.clone(),
            gens: out,
            monomial,
            basis: OnceLock::new(),
            powers: Mutex::new(HashMap::new()),
        }))
    }

    /// Ideal generated by monomials.
    pub fn from_monomials(ring: &Arc<AmbientRing<K>>, mons: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let gens = mons.into_iter().map(|m| Polynomial::monomial(ring.order(), m)).collect();
        Self::new(ring, gens)
    }

    pub fn zero(ring: &Arc<AmbientRing<K>>) -> Self {
        Self::from_checked(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<AmbientRing<K>>) -> Self {
        Self::from_checked(ring, vec![ring.one()])
    }

    /// The maximal ideal generated by all variables.
    pub fn maximal(ring: &Arc<AmbientRing<K>>) -> Self {
        Self::from_checked(ring, (0..ring.nvars()).map(|i| ring.var(i)).collect())
    }

    pub fn ring(&self) -> &Arc<AmbientRing<K>> {
        &self.0.ring
    }

    pub fn gens(&self) -> &[Polynomial<K>] {
        &self.0.gens
    }

    /// True when the generators and the ring's quotient ideal are all monomial.
    pub fn is_monomial(&self) -> bool {
        self.0.monomial && self.0.ring.quotient_is_monomial()
    }

    /// Leading monomials of the generators, for monomial ideals.
    fn gen_monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.0.gens.iter().map(|g| g.lm().unwrap().clone())
    }

    /// `U + q` as a monomial ideal (only for monomial ideals).
    fn monomial_with_q(&self) -> MonomialIdeal {
        debug_assert!(self.is_monomial());
        MonomialIdeal::new(self.ring().nvars(), self.gen_monomials().chain(self.ring().quotient_monomials()))
    }

    /// Generators of `U + q` in the free polynomial ring.
    pub fn gens_with_q(&self) -> Vec<Polynomial<K>> {
        self.0.gens.iter().chain(self.ring().quotient_gens()).cloned().collect()
    }

    /// The reduced Gröbner basis of `U + q`.
    pub fn basis(&self) -> Result<Arc<Basis<K>>> {
        self.0
            .basis
            .get_or_init(|| {
                let nvars = self.ring().nvars();
                if self.is_monomial() {
                    let mi = self.monomial_with_q();
                    let polys = mi
                        .gens()
                        .iter()
                        .map(|m| Polynomial::monomial(self.ring().order(), m.clone()))
                        .collect::<Vec<_>>();
                    let mut polys = polys;
                    let ord = self.ring().order();
                    polys.sort_by(|a, b| ord.compare(b.lm().unwrap(), a.lm().unwrap()));
                    Ok(Arc::new(Basis { polys, leading: mi }))
                } else {
                    let polys = groebner_basis(&self.gens_with_q(), &self.ring().budget())?;
                    Ok(Arc::new(Basis::from_polys(nvars, polys)))
                }
            })
            .clone()
    }

    /// The reduced Gröbner basis computed by Buchberger's algorithm even for
    /// monomial input (not cached).
    pub fn basis_general(&self) -> Result<Basis<K>> {
        let polys = groebner_basis(&self.gens_with_q(), &self.ring().budget())?;
        Ok(Basis::from_polys(self.ring().nvars(), polys))
    }

    pub fn groebner_basis(&self) -> Result<Vec<Polynomial<K>>> {
        Ok(self.basis()?.polys.clone())
    }

    pub fn normal_form(&self, f: &Polynomial<K>) -> Result<Polynomial<K>> {
        self.ring().check(f)?;
        Ok(self.basis()?.normal_form(f))
    }

    pub fn contains(&self, f: &Polynomial<K>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal<K>) -> Result<bool> {
        self.same_ring(other)?;
        if self.is_monomial() && other.is_monomial() {
            let mine = self.basis()?;
            return Ok(other.gen_monomials().all(|m| mine.leading.contains(&m)));
        }
        let b = self.basis()?;
        Ok(other.gens().iter().all(|g| b.normal_form(g).is_zero()))
    }

    pub fn equals(&self, other: &Ideal<K>) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.basis()?.polys == other.basis()?.polys)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.basis()?.leading.is_unit())
    }

    /// True when the ideal is zero in the ambient ring.
    pub fn is_zero(&self) -> Result<bool> {
        let q = self.ring().quotient_basis()?;
        Ok(self.gens().iter().all(|g| q.normal_form(g).is_zero()))
    }

    fn same_ring(&self, other: &Ideal<K>) -> Result<()> {
        if Arc::ptr_eq(self.ring(), other.ring()) || self.ring().as_ref() == other.ring().as_ref() {
            Ok(())
        } else {
            Err(Error::Structural("ideals live in different rings".into()))
        }
    }

    /// Builds a monomial ideal from a [`MonomialIdeal`] of `U + q`, dropping
    /// the generators that lie in `q`.
    fn from_monomial_ideal(ring: &Arc<AmbientRing<K>>, mi: &MonomialIdeal) -> Self {
        let q = ring.quotient_monomial_ideal();
        let gens = mi
            .gens()
            .iter()
            .filter(|m| !q.contains(m))
            .map(|m| Polynomial::monomial(ring.order(), m.clone()))
            .collect();
        Self::from_checked(ring, gens)
    }

    /// Cheap generator pruning for non-monomial results: drops zeros,
    /// duplicates up to scalars, and elements of `q`.
    fn pruned(ring: &Arc<AmbientRing<K>>, gens: Vec<Polynomial<K>>) -> Result<Self> {
        let q = ring.quotient_basis()?;
        let mut seen: Vec<Polynomial<K>> = Vec::new();
        let mut out = Vec::new();
        for g in gens {
            if g.is_zero() || q.normal_form(&g).is_zero() {
                continue;
            }
            let m = g.monic();
            if seen.contains(&m) {
                continue;
            }
            seen.push(m);
            out.push(g);
        }
        Ok(Self::from_checked(ring, out))
    }

    pub fn sum(&self, other: &Ideal<K>) -> Result<Ideal<K>> {
        self.same_ring(other)?;
        let gens = self.gens().iter().chain(other.gens()).cloned().collect();
        Ok(Self::from_checked(self.ring(), gens))
    }

    pub fn product(&self, other: &Ideal<K>) -> Result<Ideal<K>> {
        self.product_with(other, Path::Auto)
    }

    pub fn product_with(&self, other: &Ideal<K>, path: Path) -> Result<Ideal<K>> {
        self.same_ring(other)?;
        let ring = self.ring();
        if path == Path::Auto && self.is_monomial() && other.is_monomial() {
            let a = MonomialIdeal::new(ring.nvars(), self.gen_monomials());
            let b = MonomialIdeal::new(ring.nvars(), other.gen_monomials());
            return Ok(Self::from_monomial_ideal(ring, &a.product(&b)));
        }
        let mut prods = Vec::with_capacity(self.gens().len() * other.gens().len());
        for f in self.gens() {
            for g in other.gens() {
                prods.push(f.mul(g));
            }
        }
        if prods.len() > ring.budget().max_gens {
            return Err(Error::ResourceLimit(format!("product has {} generators", prods.len())));
        }
        Self::pruned(ring, prods)
    }

    /// `self^n`, memoized; `I^0` is the unit ideal.
    pub fn power(&self, n: u32) -> Result<Ideal<K>> {
        match n {
            0 => return Ok(Self::unit(self.ring())),
            1 => return Ok(self.clone()),
            _ => {}
        }
        if let Some(p) = self.0.powers.lock().unwrap().get(&n) {
            return Ok(p.clone());
        }
        let half = self.power(n / 2)?;
        let mut p = half.product(&half)?;
        if n % 2 == 1 {
            p = p.product(self)?;
        }
        self.0.powers.lock().unwrap().insert(n, p.clone());
        Ok(p)
    }

    /// `self^n` by repeated general products (not cached).
    pub fn power_with(&self, n: u32, path: Path) -> Result<Ideal<K>> {
        if path == Path::Auto {
            return self.power(n);
        }
        let mut acc = Self::unit(self.ring());
        for _ in 0..n {
            acc = acc.product_with(self, Path::General)?;
        }
        Ok(acc)
    }

    pub fn intersection(&self, other: &Ideal<K>) -> Result<Ideal<K>> {
        self.intersection_with(other, Path::Auto)
    }

    pub fn intersection_with(&self, other: &Ideal<K>, path: Path) -> Result<Ideal<K>> {
        self.same_ring(other)?;
        let ring = self.ring();
        if path == Path::Auto && self.is_monomial() && other.is_monomial() {
            let mi = self.monomial_with_q().intersection(&other.monomial_with_q());
            return Ok(Self::from_monomial_ideal(ring, &mi));
        }
        let gens = intersect_free(&self.gens_with_q(), &other.gens_with_q(), ring.order(), &ring.budget())?;
        Self::pruned(ring, gens)
    }

    /// `(self : f)`.
    pub fn quotient_elem(&self, f: &Polynomial<K>) -> Result<Ideal<K>> {
        self.quotient_elem_with(f, Path::Auto)
    }

    pub fn quotient_elem_with(&self, f: &Polynomial<K>, path: Path) -> Result<Ideal<K>> {
        let ring = self.ring();
        ring.check(f)?;
        if ring.quotient_basis()?.normal_form(f).is_zero() {
            return Ok(Self::unit(ring));
        }
        if path == Path::Auto && self.is_monomial() && f.is_monomial() {
            let mi = self.monomial_with_q().colon(f.lm().unwrap());
            return Ok(Self::from_monomial_ideal(ring, &mi));
        }
        let meet = intersect_free(&self.gens_with_q(), std::slice::from_ref(f), ring.order(), &ring.budget())?;
        let mut gens = Vec::with_capacity(meet.len());
        for h in meet {
            let q = h.exact_div(f).ok_or_else(|| {
                Error::InternalInconsistency("intersection with a principal ideal is not divisible".into())
            })?;
            gens.push(q);
        }
        Self::pruned(ring, gens)
    }

    /// `(self : other)`.
    pub fn quotient(&self, other: &Ideal<K>) -> Result<Ideal<K>> {
        self.quotient_with(other, Path::Auto)
    }

    pub fn quotient_with(&self, other: &Ideal<K>, path: Path) -> Result<Ideal<K>> {
        self.same_ring(other)?;
        if path == Path::Auto && self.is_monomial() && other.is_monomial() {
            let mi = self.monomial_with_q().colon_ideal(&MonomialIdeal::new(self.ring().nvars(), other.gen_monomials()));
            return Ok(Self::from_monomial_ideal(self.ring(), &mi));
        }
        let mut acc = Self::unit(self.ring());
        for g in other.gens() {
            let q = self.quotient_elem_with(g, path)?;
            acc = acc.intersection_with(&q, path)?;
        }
        Ok(acc)
    }

    /// `m * self`.
    pub fn times_maximal(&self) -> Result<Ideal<K>> {
        self.product(&Self::maximal(self.ring()))
    }

    /// Ideal generated by the `n`-th powers of the generators.
    pub fn frobenius_power(&self, n: u32) -> Ideal<K> {
        Self::from_checked(self.ring(), self.gens().iter().map(|g| g.pow(n)).collect())
    }

    pub fn render(&self) -> String {
        let names = self.ring().names();
        let parts: Vec<String> = self.gens().iter().map(|g| g.render(names)).collect();
        format!("({})", parts.join(", "))
    }
}

/// Intersection of two ideals of the free polynomial ring by eliminating
/// `t` from `t*A + (1-t)*B`.
fn intersect_free<K: Field>(
    a: &[Polynomial<K>],
    b: &[Polynomial<K>],
    order: TermOrder,
    budget: &Budget,
) -> Result<Vec<Polynomial<K>>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let nvars = a[0].nvars();
    let ext = TermOrder::Elim(1);
    let lift = |f: &Polynomial<K>, t_exp: u32| f.map_monomials(nvars + 1, ext, |m| m.prepend(&[t_exp]));
    let mut gens = Vec::with_capacity(a.len() + 2 * b.len());
    for f in a {
        gens.push(lift(f, 1));
    }
    for g in b {
        gens.push(lift(g, 0).sub(&lift(g, 1)));
    }
    let gb = groebner_basis(&gens, budget)?;
    Ok(gb
        .into_iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.exp(0) == 0))
        .map(|g| g.map_monomials(nvars, order, |m| m.drop_vars(0..1)))
        .collect())
}
