//! Exact sparse linear algebra over a [`Field`].
//!
//! Rows are sparse vectors: `(column, value)` pairs sorted by column with
//! no zero entries.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactalg::{Field, Rational};

pub type SparseRow<K> = Vec<(usize, K)>;

/// Normalizes an arbitrary list of entries into a sparse row.
pub fn sparse_row<K: Field>(mut entries: Vec<(usize, K)>) -> SparseRow<K> {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseRow<K> = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = last.1.add(&v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// `a + s * b` for sparse rows.
fn axpy<K: Field>(a: &[(usize, K)], s: &K, b: &[(usize, K)]) -> SparseRow<K> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, s.mul(&b[j].1)));
            j += 1;
        } else {
            let v = a[i].1.add(&s.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row echelon form that remembers how each pivot row was
/// combined from the inserted rows.
///
/// Used both for ranks and for coordinates with respect to a chosen basis.
#[derive(Clone, Debug)]
pub struct Echelon<K: Field> {
    /// Pivot column -> (row with leading entry 1 at that column, combination).
    pivots: HashMap<usize, (SparseRow<K>, SparseRow<K>)>,
    inserted: usize,
}

impl<K: Field> Default for Echelon<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Field> Echelon<K> {
    pub fn new() -> Self {
        Echelon { pivots: HashMap::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Number of rows passed to [`Echelon::insert`] so far.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduces `row` against the current pivots. Returns the remainder and
    /// the combination `c` of inserted rows with `row - Σ c_i r_i = remainder`.
    pub fn reduce(&self, row: SparseRow<K>) -> (SparseRow<K>, SparseRow<K>) {
        let mut rem: SparseRow<K> = Vec::new();
        let mut combo: SparseRow<K> = Vec::new();
        let mut cur = row;
        while let Some((col, val)) = cur.first().cloned() {
            match self.pivots.get(&col) {
                Some((prow, pcombo)) => {
                    let s = val.neg();
                    cur = axpy(&cur, &s, prow);
                    combo = axpy(&combo, &val, pcombo);
                }
                None => {
                    rem.push((col, val));
                    cur.remove(0);
                }
            }
        }
        (rem, combo)
    }

    /// Inserts a row; returns true when it was independent of the previous rows.
    pub fn insert(&mut self, row: SparseRow<K>) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let (rem, combo) = self.reduce(row);
        let Some((col, lead)) = rem.first().cloned() else {
            return false;
        };
        // rem = row_idx - Σ combo_i r_i
        let mut full_combo: SparseRow<K> = combo.into_iter().map(|(c, v)| (c, v.neg())).collect();
        full_combo = axpy(&full_combo, &K::one(), &[(idx, K::one())]);
        let inv = lead.inv();
        let prow = rem.into_iter().map(|(c, v)| (c, v.mul(&inv))).collect();
        let pcombo = full_combo.into_iter().map(|(c, v)| (c, v.mul(&inv))).collect();
        self.pivots.insert(col, (prow, pcombo));
        true
    }

    /// Coordinates of `row` in terms of the inserted rows, if it lies in their span.
    pub fn solve(&self, row: SparseRow<K>) -> Option<SparseRow<K>> {
        let (rem, combo) = self.reduce(row);
        if rem.is_empty() {
            Some(combo)
        } else {
            None
        }
    }
}

/// Rank by plain Gaussian elimination.
pub fn gauss_rank<K: Field>(rows: Vec<SparseRow<K>>) -> usize {
    let mut pivots: HashMap<usize, SparseRow<K>> = HashMap::new();
    for row in rows {
        let mut cur = row;
        while let Some((col, val)) = cur.first().cloned() {
            match pivots.get(&col) {
                Some(p) => cur = axpy(&cur, &val.neg(), p),
                None => {
                    let inv = val.inv();
                    let normalized = cur.into_iter().map(|(c, v)| (c, v.mul(&inv))).collect();
                    pivots.insert(col, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

const BIG_PRIME: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % BIG_PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    acc
}

fn bigint_mod(v: &BigInt) -> u64 {
    v.mod_floor(&BigInt::from(BIG_PRIME)).to_u64().expect("residue fits")
}

/// Rank of an integer matrix modulo a 61-bit prime; a lower bound for the rank over ℚ.
fn modular_rank(rows: &[Vec<(usize, BigInt)>]) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for row in rows {
        let mut cur: Vec<(usize, u64)> =
            row.iter().map(|(c, v)| (*c, bigint_mod(v))).filter(|(_, v)| *v != 0).collect();
        while let Some(&(col, val)) = cur.first() {
            match pivots.get(&col) {
                Some(p) => {
                    let s = BIG_PRIME - val;
                    let mut out = Vec::with_capacity(cur.len() + p.len());
                    let (mut i, mut j) = (0, 0);
                    while i < cur.len() || j < p.len() {
                        if j == p.len() || (i < cur.len() && cur[i].0 < p[j].0) {
                            out.push(cur[i]);
                            i += 1;
                        } else if i == cur.len() || p[j].0 < cur[i].0 {
                            out.push((p[j].0, mulmod(s, p[j].1)));
                            j += 1;
                        } else {
                            let v = (cur[i].1 + mulmod(s, p[j].1)) % BIG_PRIME;
                            if v != 0 {
                                out.push((cur[i].0, v));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    cur = out;
                }
                None => {
                    let inv = powmod(val, BIG_PRIME - 2);
                    let normalized = cur.iter().map(|&(c, v)| (c, mulmod(v, inv))).collect();
                    pivots.insert(col, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn content(row: &[(usize, BigInt)]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, v) in row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Exact rank of an integer matrix by fraction-free elimination with
/// content removal.
fn integer_rank(rows: Vec<Vec<(usize, BigInt)>>) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, BigInt)>> = HashMap::new();
    for row in rows {
        let mut cur = row;
        while let Some((col, val)) = cur.first().cloned() {
            match pivots.get(&col) {
                Some(p) => {
                    // cur := a*cur - b*p where a = lead(p), b = lead(cur)
                    let a = &p[0].1;
                    let g = a.gcd(&val);
                    let a = a / &g;
                    let b = &val / &g;
                    let mut out = Vec::with_capacity(cur.len() + p.len());
                    let (mut i, mut j) = (0, 0);
                    while i < cur.len() || j < p.len() {
                        if j == p.len() || (i < cur.len() && cur[i].0 < p[j].0) {
                            out.push((cur[i].0, &a * &cur[i].1));
                            i += 1;
                        } else if i == cur.len() || p[j].0 < cur[i].0 {
                            out.push((p[j].0, -(&b * &p[j].1)));
                            j += 1;
                        } else {
                            let v = &a * &cur[i].1 - &b * &p[j].1;
                            if !v.is_zero() {
                                out.push((cur[i].0, v));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    let c = content(&out);
                    if !c.is_zero() && !c.is_one() {
                        for e in out.iter_mut() {
                            e.1 = &e.1 / &c;
                        }
                    }
                    cur = out;
                }
                None => {
                    if cur[0].1.is_negative() {
                        for e in cur.iter_mut() {
                            e.1 = -&e.1;
                        }
                    }
                    pivots.insert(col, cur);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Clears denominators row by row.
fn integer_rows(rows: Vec<SparseRow<Rational>>) -> Vec<Vec<(usize, BigInt)>> {
    rows.into_iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
            let mut out: Vec<(usize, BigInt)> =
                row.into_iter().map(|(c, v)| (c, v.numer() * (&l / v.denom()))).collect();
            let g = content(&out);
            if !g.is_zero() && !g.is_one() {
                for e in out.iter_mut() {
                    e.1 = &e.1 / &g;
                }
            }
            out
        })
        .filter(|r| !r.is_empty())
        .collect()
}

/// Exact rank over ℚ.
///
/// The rank modulo a large prime is a lower bound; when it already equals
/// the number of rows or of nonzero columns it is the exact answer and the
/// integer elimination is skipped.
pub fn rational_rank(rows: Vec<SparseRow<Rational>>) -> usize {
    let rows = integer_rows(rows);
    let mut cols: Vec<usize> = rows.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    cols.sort_unstable();
    cols.dedup();
    let bound = rows.len().min(cols.len());
    let lower = modular_rank(&rows);
    if lower == bound {
        return lower;
    }
    integer_rank(rows)
}

/// Dense matrix helper: rank of a row-major dense matrix.
pub fn dense_rank<K: Field>(m: &[Vec<K>]) -> usize {
    let rows = m
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect())
        .collect();
    K::sparse_rank(rows)
}
