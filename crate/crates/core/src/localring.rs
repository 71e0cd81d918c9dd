//! The ambient ring `A = k[x_1..x_d]/q` viewed at the origin, lengths of
//! quotients and minimal numbers of generators.
//!
//! A polynomial ring localized at the origin is modelled by the graded
//! polynomial ring itself: for ideals primary to `m`, and for every length
//! of a module killed by `m`, the two agree.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{Field, Monomial, Polynomial, TermOrder};
use crate::groebner::{Basis, Budget, Count, Ideal, MonomialIdeal, Path};
use crate::linalg::{sparse_row, Echelon, SparseRow};

/// A polynomial ring modulo a fixed ideal `q ⊆ m`.
pub struct AmbientRing<K: Field> {
    names: Vec<String>,
    order: TermOrder,
    quotient: Vec<Polynomial<K>>,
    quotient_monomial: bool,
    quotient_mi: MonomialIdeal,
    quotient_basis: OnceLock<Result<Arc<Basis<K>>>>,
    budget: Budget,
}

impl<K: Field> fmt::Debug for AmbientRing<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl<K: Field> PartialEq for AmbientRing<K> {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.order == other.order && self.quotient == other.quotient
    }
}

impl<K: Field> AmbientRing<K> {
    /// `k[names]/(quotient)`; every relation must vanish at the origin.
    pub fn new(names: Vec<String>, quotient: Vec<Polynomial<K>>) -> Result<Arc<Self>> {
        Self::with_budget(names, quotient, Budget::from_env())
    }

    pub fn with_budget(names: Vec<String>, quotient: Vec<Polynomial<K>>, budget: Budget) -> Result<Arc<Self>> {
        if names.is_empty() {
            return Err(Error::Structural("a ring needs at least one variable".into()));
        }
        let order = TermOrder::Grevlex;
        let nvars = names.len();
        let mut rels = Vec::new();
        for f in quotient {
            if f.nvars() != nvars || f.order() != order {
                return Err(Error::Structural("relation does not live in the ring".into()));
            }
            if f.terms().iter().any(|(m, _)| m.is_one()) {
                return Err(Error::Structural(format!(
                    "relation {} has a constant term; the ring would not be local at the origin",
                    f.render(&names)
                )));
            }
            if !f.is_zero() && !rels.contains(&f) {
                rels.push(f);
            }
        }
        let quotient_monomial = rels.iter().all(|f| f.is_monomial());
        let quotient_mi = if quotient_monomial {
            MonomialIdeal::new(nvars, rels.iter().map(|f| f.lm().unwrap().clone()))
        } else {
            MonomialIdeal::zero(nvars)
        };
        Ok(Arc::new(AmbientRing {
            names,
            order,
            quotient: rels,
            quotient_monomial,
            quotient_mi,
            quotient_basis: OnceLock::new(),
            budget,
        }))
    }

    pub fn polynomial_ring(names: &[&str]) -> Arc<Self> {
        Self::new(names.iter().map(|s| s.to_string()).collect(), Vec::new()).expect("free polynomial ring")
    }

    /// The same ring with additional relations.
    pub fn with_relations(&self, extra: Vec<Polynomial<K>>) -> Result<Arc<Self>> {
        let rels = self.quotient.iter().cloned().chain(extra).collect();
        Self::with_budget(self.names.clone(), rels, self.budget)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn var(&self, i: usize) -> Polynomial<K> {
        Polynomial::var(self.nvars(), self.order, i)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn one(&self) -> Polynomial<K> {
        Polynomial::constant(self.nvars(), self.order, K::one())
    }

    pub fn constant(&self, c: K) -> Polynomial<K> {
        Polynomial::constant(self.nvars(), self.order, c)
    }

    pub fn monomial(&self, exps: &[u32]) -> Polynomial<K> {
        Polynomial::monomial(self.order, Monomial::new(exps))
    }

    pub fn zero(&self) -> Polynomial<K> {
        Polynomial::zero(self.nvars(), self.order)
    }

    /// Errors unless `f` has this ring's variable count and order.
    pub fn check(&self, f: &Polynomial<K>) -> Result<()> {
        if f.nvars() != self.nvars() || f.order() != self.order {
            return Err(Error::Structural(format!(
                "polynomial with {} variables does not live in {}",
                f.nvars(),
                self.render()
            )));
        }
        Ok(())
    }

    pub fn quotient_gens(&self) -> &[Polynomial<K>] {
        &self.quotient
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.quotient.is_empty()
    }

    pub fn quotient_is_monomial(&self) -> bool {
        self.quotient_monomial
    }

    pub(crate) fn quotient_monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.quotient_mi.gens().iter().cloned()
    }

    /// Minimal monomial generators of `q` (empty unless `q` is monomial).
    pub(crate) fn quotient_monomial_ideal(&self) -> &MonomialIdeal {
        &self.quotient_mi
    }

    pub fn quotient_basis(&self) -> Result<Arc<Basis<K>>> {
        self.quotient_basis
            .get_or_init(|| {
                if self.quotient_monomial {
                    let polys = self
                        .quotient_mi
                        .gens()
                        .iter()
                        .map(|m| Polynomial::monomial(self.order, m.clone()))
                        .collect();
                    Ok(Arc::new(Basis { polys, leading: self.quotient_mi.clone() }))
                } else {
                    let polys = crate::groebner::groebner_basis(&self.quotient, &self.budget)?;
                    let leading = MonomialIdeal::new(self.nvars(), polys.iter().map(|g| g.lm().unwrap().clone()));
                    Ok(Arc::new(Basis { polys, leading }))
                }
            })
            .clone()
    }

    /// `f` reduced modulo `q`.
    pub fn reduce(&self, f: &Polynomial<K>) -> Result<Polynomial<K>> {
        Ok(self.quotient_basis()?.normal_form(f))
    }

    pub fn render(&self) -> String {
        let base = format!("{}[{}]", K::name(), self.names.join(","));
        if self.quotient.is_empty() {
            base
        } else {
            let rels: Vec<String> = self.quotient.iter().map(|f| f.render(&self.names)).collect();
            format!("{} mod ({})", base, rels.join(", "))
        }
    }
}

/// A length, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u64> {
        match self {
            Length::Finite(v) => Some(v),
            Length::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Length::Finite(_))
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(v) => write!(f, "{v}"),
            Length::Infinite => write!(f, "infinite"),
        }
    }
}

impl From<Count> for Length {
    fn from(c: Count) -> Self {
        match c {
            Count::Finite(v) => Length::Finite(v),
            Count::Infinite => Length::Infinite,
        }
    }
}

/// `dim_k A/U`: the number of standard monomials of `U + q`.
pub fn colength<K: Field>(u: &Ideal<K>) -> Result<Length> {
    colength_with(u, Path::Auto)
}

pub fn colength_with<K: Field>(u: &Ideal<K>, path: Path) -> Result<Length> {
    let basis = match path {
        Path::Auto => u.basis()?.leading.clone(),
        Path::General => u.basis_general()?.leading,
    };
    Ok(basis.count_standard().into())
}

/// True when `A/U` has finite length, i.e. `U` is primary to the maximal ideal.
pub fn is_m_primary<K: Field>(u: &Ideal<K>) -> Result<bool> {
    Ok(u.basis()?.leading.is_artinian())
}

/// `μ(U) = dim_k U/mU`.
pub fn min_gens<K: Field>(u: &Ideal<K>) -> Result<usize> {
    min_gens_with(u, Path::Auto)
}

pub fn min_gens_with<K: Field>(u: &Ideal<K>, path: Path) -> Result<usize> {
    if path == Path::Auto && u.is_monomial() {
        let full = u.basis()?;
        let q = u.ring().quotient_monomial_ideal();
        return Ok(full.leading.gens().iter().filter(|m| !q.contains(m)).count());
    }
    let mu = u.times_maximal()?;
    let basis = match path {
        Path::Auto => (*mu.basis()?).clone(),
        Path::General => mu.basis_general()?,
    };
    let mut cols = HashMap::new();
    let rows = u.gens().iter().map(|g| to_row(&basis.normal_form(g), &mut cols)).collect();
    Ok(K::sparse_rank(rows))
}

fn to_row<K: Field>(f: &Polynomial<K>, cols: &mut HashMap<Monomial, usize>) -> SparseRow<K> {
    let entries = f
        .terms()
        .iter()
        .map(|(m, c)| {
            let n = cols.len();
            (*cols.entry(m.clone()).or_insert(n), c.clone())
        })
        .collect();
    sparse_row(entries)
}

/// Rank of the images of `elems` in `U/mU`.
///
/// With `elems ⊆ U`, the elements generate `U` locally (Nakayama) exactly
/// when the rank equals `μ(U)`.
pub fn rank_modulo_maximal<K: Field>(u: &Ideal<K>, elems: &[Polynomial<K>]) -> Result<usize> {
    Ok(FiberSpace::new(u)?.rank_of(elems))
}

/// True when `elems` (contained in `U`) generate `U` in the local ring.
pub fn generates_locally<K: Field>(u: &Ideal<K>, elems: &[Polynomial<K>]) -> Result<bool> {
    let space = FiberSpace::new(u)?;
    Ok(space.rank_of(elems) == space.dim())
}

/// The `k`-space `U/mU` with an explicit basis of residue classes of
/// generators of `U`.
///
/// The basis consists of the first generators (in the given order) that are
/// independent modulo `mU`.
pub struct FiberSpace<K: Field> {
    reducer: Reducer<K>,
    basis: Vec<Polynomial<K>>,
    echelon: Echelon<K>,
    cols: HashMap<Monomial, usize>,
}

enum Reducer<K: Field> {
    Monomial(MonomialIdeal),
    General(Arc<Basis<K>>),
}

impl<K: Field> Reducer<K> {
    fn normal_form(&self, f: &Polynomial<K>) -> Polynomial<K> {
        match self {
            Reducer::Monomial(mi) => mi.normal_form(f),
            Reducer::General(b) => b.normal_form(f),
        }
    }
}

impl<K: Field> FiberSpace<K> {
    pub fn new(u: &Ideal<K>) -> Result<Self> {
        let reducer = if u.is_monomial() {
            let ring = u.ring();
            let gens = MonomialIdeal::new(ring.nvars(), u.gens().iter().map(|g| g.lm().unwrap().clone()));
            let m = MonomialIdeal::new(ring.nvars(), (0..ring.nvars()).map(|i| Monomial::var(ring.nvars(), i, 1)));
            Reducer::Monomial(gens.product(&m).sum(ring.quotient_monomial_ideal()))
        } else {
            Reducer::General(u.times_maximal()?.basis()?)
        };
        let mut space = FiberSpace { reducer, basis: Vec::new(), echelon: Echelon::new(), cols: HashMap::new() };
        let mut chosen = Vec::new();
        for g in u.gens() {
            let row = space.row(g);
            if space.echelon.insert(row) {
                chosen.push(g.clone());
            }
        }
        space.basis = chosen;
        // rebuild so that inserted-row indices are basis indices
        let mut echelon = Echelon::new();
        for g in &space.basis {
            let row = to_row(&space.reducer.normal_form(g), &mut space.cols);
            echelon.insert(row);
        }
        space.echelon = echelon;
        Ok(space)
    }

    fn row(&mut self, f: &Polynomial<K>) -> SparseRow<K> {
        let nf = self.reducer.normal_form(f);
        to_row(&nf, &mut self.cols)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Generators of `U` whose classes form the chosen basis.
    pub fn basis(&self) -> &[Polynomial<K>] {
        &self.basis
    }

    /// Normal form modulo `mU + q`.
    pub fn reduce(&self, f: &Polynomial<K>) -> Polynomial<K> {
        self.reducer.normal_form(f)
    }

    /// Coordinates of the class of `f ∈ U` in the chosen basis.
    pub fn coordinates(&mut self, f: &Polynomial<K>) -> Result<Vec<K>> {
        let row = self.row(f);
        let combo = self
            .echelon
            .solve(row)
            .ok_or_else(|| Error::Containment("element does not lie in the ideal".into()))?;
        let mut out = vec![K::zero(); self.dim()];
        for (i, c) in combo {
            out[i] = c;
        }
        Ok(out)
    }

    /// Rank of the classes of `elems`.
    pub fn rank_of(&self, elems: &[Polynomial<K>]) -> usize {
        let mut cols = self.cols.clone();
        let rows = elems.iter().map(|f| to_row(&self.reducer.normal_form(f), &mut cols)).collect();
        K::sparse_rank(rows)
    }
}

/// `dim_k U/V` for `V ⊆ U`, counted as the leading monomials of `U + q`
/// that are standard for `V + q`.
pub fn quotient_dim<K: Field>(u: &Ideal<K>, v: &Ideal<K>) -> Result<Length> {
    if !u.contains_ideal(v)? {
        return Err(Error::Containment(format!("{} is not contained in {}", v.render(), u.render())));
    }
    let (lu, lv) = (u.basis()?.leading.clone(), v.basis()?.leading.clone());
    if let (Count::Finite(a), Count::Finite(b)) = (lu.count_standard(), lv.count_standard()) {
        return Ok(Length::Finite(b - a));
    }
    Ok(match lu.difference(&lv) {
        Some(ms) => Length::Finite(ms.len() as u64),
        None => Length::Infinite,
    })
}

/// Krull dimension of `A/U` from the leading-term ideal: the largest set of
/// variables containing no leading monomial's support.
pub fn krull_dim<K: Field>(u: &Ideal<K>) -> Result<usize> {
    let lead = u.basis()?.leading.clone();
    if lead.is_unit() {
        return Ok(0);
    }
    let n = u.ring().nvars();
    let supports: Vec<u64> = lead
        .gens()
        .iter()
        .map(|m| m.exps().iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |acc, (i, _)| acc | (1 << i)))
        .collect();
    let mut best = 0;
    for set in 0u64..(1 << n) {
        let size = set.count_ones() as usize;
        if size > best && supports.iter().all(|s| s & !set != 0) {
            best = size;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rational;

    type R = AmbientRing<Rational>;

    fn xy() -> Arc<R> {
        R::polynomial_ring(&["x", "y"])
    }

    fn mono(ring: &Arc<R>, ms: &[&[u32]]) -> Ideal<Rational> {
        Ideal::from_monomials(ring, ms.iter().map(|e| Monomial::new(e))).unwrap()
    }

    #[test]
    fn colengths() {
        let r = xy();
        assert_eq!(colength(&Ideal::maximal(&r)).unwrap(), Length::Finite(1));
        assert_eq!(colength(&mono(&r, &[&[2, 0], &[0, 3]])).unwrap(), Length::Finite(6));
        assert_eq!(colength(&mono(&r, &[&[1, 0]])).unwrap(), Length::Infinite);
    }

    #[test]
    fn minimal_generator_counts() {
        let r = xy();
        let m = Ideal::maximal(&r);
        assert_eq!(min_gens(&m.power(3).unwrap()).unwrap(), 4);
        let sparse_seventh = mono(&r, &[&[7, 0], &[6, 1], &[1, 6], &[0, 7]]);
        assert_eq!(min_gens(&sparse_seventh).unwrap(), 4);
        assert_eq!(min_gens(&sparse_seventh.power(2).unwrap()).unwrap(), 9);
        assert_eq!(min_gens_with(&sparse_seventh.power(2).unwrap(), Path::General).unwrap(), 9);
    }

    #[test]
    fn quotient_dimensions() {
        let r = xy();
        let m = Ideal::maximal(&r);
        assert_eq!(quotient_dim(&m, &m.power(2).unwrap()).unwrap(), Length::Finite(2));
        assert!(matches!(quotient_dim(&m.power(2).unwrap(), &m), Err(Error::Containment(_))));
        let x = mono(&r, &[&[1, 0]]);
        let x2 = mono(&r, &[&[2, 0]]);
        assert_eq!(quotient_dim(&x, &x2).unwrap(), Length::Infinite);
        let xm = x.times_maximal().unwrap();
        assert_eq!(quotient_dim(&x, &xm).unwrap(), Length::Finite(1));
    }

    #[test]
    fn quotient_ring_lengths() {
        // k[x1,x2,x3]/(x1^2, x1 x2): m/m^2 has dimension 3
        let r = R::polynomial_ring(&["a", "b", "c"]);
        let q = vec![r.monomial(&[2, 0, 0]), r.monomial(&[1, 1, 0])];
        let a = R::new(r.names().to_vec(), q).unwrap();
        let m = Ideal::maximal(&a);
        assert_eq!(quotient_dim(&m, &m.power(2).unwrap()).unwrap(), Length::Finite(3));
        assert_eq!(krull_dim(&Ideal::zero(&a)).unwrap(), 2);
    }

    #[test]
    fn relations_must_vanish_at_origin() {
        let r = xy();
        let bad = r.var(0).add(&r.one());
        assert!(R::new(r.names().to_vec(), vec![bad]).is_err());
    }

    #[test]
    fn fiber_space_coordinates() {
        let r = xy();
        let (x, y) = (r.var(0), r.var(1));
        let u = Ideal::new(&r, vec![x.clone(), y.clone(), x.add(&y)]).unwrap();
        let mut s = FiberSpace::new(&u).unwrap();
        assert_eq!(s.dim(), 2);
        let f = x.scale(&Rational::from_i64(2)).sub(&y).add(&x.mul(&y));
        assert_eq!(s.coordinates(&f).unwrap(), vec![Rational::from_i64(2), Rational::from_i64(-1)]);
    }
}
