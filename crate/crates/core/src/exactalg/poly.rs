use std::cmp::Ordering;
use std::collections::HashMap;

use super::{Field, Monomial, TermOrder};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial in canonical form.
///
/// Terms are strictly descending in `order`, with nonzero coefficients, so
/// two polynomials over the same signature are equal iff their term lists
/// are equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<K: Field> {
    nvars: usize,
    order: TermOrder,
    terms: Vec<(Monomial, K)>,
}

impl<K: Field> Polynomial<K> {
    pub fn zero(nvars: usize, order: TermOrder) -> Self {
        Polynomial { nvars, order, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, order: TermOrder, c: K) -> Self {
        Self::term(order, Monomial::one(nvars), c)
    }

    pub fn term(order: TermOrder, m: Monomial, c: K) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars, order);
        }
        Polynomial { nvars, order, terms: vec![(m, c)] }
    }

    pub fn monomial(order: TermOrder, m: Monomial) -> Self {
        Self::term(order, m, K::one())
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, order: TermOrder, i: usize) -> Self {
        Self::monomial(order, Monomial::var(nvars, i, 1))
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(nvars: usize, order: TermOrder, terms: Vec<(Monomial, K)>) -> Self {
        let mut acc: HashMap<Monomial, K> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            match acc.get_mut(&m) {
                Some(v) => *v = v.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(nvars, order, acc)
    }

    fn from_map(nvars: usize, order: TermOrder, acc: HashMap<Monomial, K>) -> Self {
        let mut terms: Vec<(Monomial, K)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Polynomial { nvars, order, terms }
    }

    /// All terms but the leading one.
    pub fn tail(&self) -> Self {
        Polynomial { nvars: self.nvars, order: self.order, terms: self.terms.get(1..).unwrap_or(&[]).to_vec() }
    }

    /// Trusts that `terms` is already strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted_unchecked(nvars: usize, order: TermOrder, terms: Vec<(Monomial, K)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| order.compare(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { nvars, order, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, K)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, K)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// A single term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lc(&self) -> Option<&K> {
        self.terms.first().map(|t| &t.1)
    }

    /// Highest total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Lowest total degree of a term; `None` for zero.
    pub fn order_at_origin(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    fn same_signature(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars || self.order != other.order {
            return Err(Error::Structural(format!(
                "polynomial signatures differ: {} vars/{:?} vs {} vars/{:?}",
                self.nvars, self.order, other.nvars, other.order
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_signature(other)?;
        Ok(self.add(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_signature(other)?;
        Ok(self.sub(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_signature(other)?;
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, |c| c.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, |c| c.neg())
    }

    fn merge(&self, other: &Self, map_other: impl Fn(&K) -> K) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let ord = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match ord.compare(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), map_other(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1.add(&map_other(&b[j].1));
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), map_other(c))));
        Polynomial { nvars: self.nvars, order: ord, terms: out }
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.order);
        }
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d.mul(c))).collect(),
        }
    }

    /// Multiplies by `c * m`; the term order is preserved so no sorting is needed.
    pub fn mul_term(&self, m: &Monomial, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.order);
        }
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(t, d)| (t.mul(m), d.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(t, d)| (t.mul(m), d.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars, self.order);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, K> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(self.nvars, self.order, acc)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::constant(self.nvars, self.order, K::one());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv()),
        }
    }

    /// Re-sorts the terms under another order.
    pub fn with_order(&self, order: TermOrder) -> Self {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Polynomial { nvars: self.nvars, order, terms }
    }

    /// Maps every monomial through `f` into a ring with `nvars` variables.
    pub fn map_monomials(&self, nvars: usize, order: TermOrder, f: impl Fn(&Monomial) -> Monomial) -> Self {
        Self::from_terms(nvars, order, self.terms.iter().map(|(m, c)| (f(m), c.clone())).collect())
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, c) in &self.terms {
            terms.push((t.div(m)?, c.clone()));
        }
        Some(Polynomial { nvars: self.nvars, order: self.order, terms })
    }

    /// Exact division `self / g`; `None` if `g` does not divide `self`.
    pub fn exact_div(&self, g: &Self) -> Option<Self> {
        let (glm, glc) = (g.lm()?, g.lc()?);
        let ginv = glc.inv();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let q = m.div(glm)?;
            let qc = c.mul(&ginv);
            rem = rem.sub(&g.mul_term(&q, &qc));
            quot.push((q, qc));
        }
        Some(Self::from_terms(self.nvars, self.order, quot))
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = abs.to_string();
            let coeff = if coeff.contains('/') { format!("({coeff})") } else { coeff };
            if m.is_one() {
                out.push_str(&coeff);
            } else if abs.is_one() {
                out.push_str(&m.render(names));
            } else {
                out.push_str(&format!("{}*{}", coeff, m.render(names)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rational;
    use proptest::prelude::*;

    type P = Polynomial<Rational>;
    const G: TermOrder = TermOrder::Grevlex;

    fn x() -> P {
        P::var(2, G, 0)
    }
    fn y() -> P {
        P::var(2, G, 1)
    }
    fn c(v: i64) -> P {
        P::constant(2, G, Rational::from_i64(v))
    }

    #[test]
    fn cancellation() {
        let s = x().add(&y()).add(&x().sub(&y()));
        assert_eq!(s, x().scale(&Rational::from_i64(2)));
    }

    #[test]
    fn difference_of_squares() {
        let p = x().add(&y()).mul(&x().sub(&y()));
        assert_eq!(p, x().pow(2).sub(&y().pow(2)));
    }

    #[test]
    fn annihilator() {
        let f = c(3).mul(&x().pow(2)).mul(&y()).sub(&y().pow(3));
        assert!(f.mul(&c(0)).is_zero());
    }

    #[test]
    fn signature_mismatch_is_structural() {
        let a = x();
        let b = P::var(3, G, 0);
        assert!(matches!(a.try_add(&b), Err(Error::Structural(_))));
        assert!(a.try_mul(&x().with_order(TermOrder::Lex)).is_err());
    }

    #[test]
    fn exact_division() {
        let f = x().add(&y()).mul(&x().sub(&y()));
        assert_eq!(f.exact_div(&x().add(&y())), Some(x().sub(&y())));
        assert_eq!(x().exact_div(&y()), None);
    }

    #[test]
    fn rendering() {
        let names = vec!["x".to_string(), "y".to_string()];
        let f = c(3).mul(&x().pow(2)).mul(&y()).sub(&y().pow(3)).sub(&c(1));
        assert_eq!(f.render(&names), "3*x^2*y - y^3 - 1");
    }

    fn poly() -> impl Strategy<Value = P> {
        prop::collection::vec(((0u32..4, 0u32..4), -5i64..6), 0..6).prop_map(|ts| {
            P::from_terms(
                2,
                G,
                ts.into_iter().map(|((a, b), c)| (Monomial::new(&[a, b]), Rational::from_i64(c))).collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(f in poly(), g in poly(), h in poly()) {
            prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
            prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
            prop_assert_eq!(f.mul(&g), g.mul(&f));
            prop_assert!(f.sub(&f).is_zero());
        }

        #[test]
        fn normalization_is_idempotent(f in poly()) {
            let again = P::from_terms(2, G, f.terms().to_vec());
            prop_assert_eq!(again, f);
        }
    }
}
