use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Exponent vector of a monomial, one entry per ring variable.
///
/// The derived `Ord` is plain lexicographic comparison of the exponent
/// vectors and exists only for deterministic container ordering; use
/// [`TermOrder::compare`] for term orders.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 6]>);

impl Monomial {
    pub fn new(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    /// The monomial `x_i^e`.
    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflow"))
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|a| a.checked_mul(n).expect("monomial exponent overflow"))
                .collect(),
        )
    }

    /// Componentwise divisibility `self | other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(
            self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Exponentwise `max(self - other, 0)`, i.e. `self / gcd(self, other)`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    /// True when `gcd(self, other) = 1`.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Drops the variables in `range` (used after elimination).
    pub fn drop_vars(&self, range: std::ops::Range<usize>) -> Monomial {
        Monomial(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| !range.contains(i))
                .map(|(_, e)| *e)
                .collect(),
        )
    }

    /// Prepends `k` variables with the given exponents.
    pub fn prepend(&self, front: &[u32]) -> Monomial {
        let mut v: SmallVec<[u32; 6]> = SmallVec::from_slice(front);
        v.extend_from_slice(&self.0);
        Monomial(v)
    }

    /// Renders with the given variable names, `1` for the unit monomial.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// A monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TermOrder {
    /// Graded reverse lexicographic.
    Grevlex,
    Lex,
    /// Block order eliminating the first `k` variables: grevlex on the
    /// first block, ties broken by grevlex on the rest.
    Elim(usize),
}

impl TermOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match *self {
            TermOrder::Grevlex => grevlex(a.exps(), b.exps()),
            TermOrder::Lex => a.exps().cmp(b.exps()),
            TermOrder::Elim(k) => grevlex(&a.exps()[..k], &b.exps()[..k])
                .then_with(|| grevlex(&a.exps()[k..], &b.exps()[k..])),
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b.iter()).rev() {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e)
    }

    #[test]
    fn grevlex_examples() {
        let ord = TermOrder::Grevlex;
        assert_eq!(ord.compare(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(ord.compare(&m(&[1, 1]), &m(&[1, 1])), Ordering::Equal);
        // x*z < y^2 in grevlex on (x,y,z)
        assert_eq!(ord.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn lex_examples() {
        let ord = TermOrder::Lex;
        assert_eq!(ord.compare(&m(&[0, 3]), &m(&[1, 0])), Ordering::Less);
    }

    #[test]
    fn elimination_block_dominates() {
        let ord = TermOrder::Elim(1);
        assert_eq!(ord.compare(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
    }

    #[test]
    fn division_and_lcm() {
        assert_eq!(m(&[2, 1]).div(&m(&[1, 1])), Some(m(&[1, 0])));
        assert_eq!(m(&[1, 0]).div(&m(&[0, 1])), None);
        assert_eq!(m(&[2, 1]).lcm(&m(&[1, 3])), m(&[2, 3]));
    }

    fn mono3() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..6, 3).prop_map(|v| Monomial::new(&v))
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative(a in mono3(), b in mono3(), c in mono3()) {
            for ord in [TermOrder::Grevlex, TermOrder::Lex, TermOrder::Elim(1)] {
                let ab = ord.compare(&a, &b);
                prop_assert_eq!(ord.compare(&a.mul(&c), &b.mul(&c)), ab);
                prop_assert_ne!(ord.compare(&Monomial::one(3), &a.mul(&c)), Ordering::Greater);
                prop_assert_eq!(ord.compare(&b, &a), ab.reverse());
            }
        }
    }
}
