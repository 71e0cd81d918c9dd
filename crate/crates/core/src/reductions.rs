//! Reductions and reduction numbers, the asymptotic reduction number and
//! the sign of the a-invariant, and windowed tests of element conditions
//! (regular, superficial, Rees-superficial, filter-regular) and of the
//! intersection conditions `I^n ∩ J = J I^{n-1}` and
//! `I^{2n} ∩ J^{[n]} = J^{[n]} I^n`.

use std::fmt;
use std::ops::RangeInclusive;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{Field, Polynomial};
use crate::groebner::Ideal;
use crate::localring::{krull_dim, FiberSpace};
use crate::semigroup::SemigroupIdeal;

/// Outcome of a windowed test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "HOLDS",
            Status::Fails => "FAILS",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// One tested point of a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    /// The index tested: `[n]`, `[j]` or `[r, s]`.
    pub point: Vec<usize>,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// A concrete counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub point: Vec<usize>,
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub property: String,
    pub status: Status,
    pub window: Vec<Vec<usize>>,
    pub evidence: Vec<Evidence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerdictReport {
    fn new(property: &str) -> Self {
        VerdictReport {
            property: property.to_string(),
            status: Status::Inconclusive,
            window: Vec::new(),
            evidence: Vec::new(),
            witness: None,
            note: None,
        }
    }

    fn record(&mut self, point: Vec<usize>, holds: bool, detail: Option<String>) {
        self.window.push(point.clone());
        self.evidence.push(Evidence { point, holds, detail });
    }

    /// Every point must pass; any failure is reported with a witness.
    fn conclude_all(mut self) -> Self {
        self.status = if self.evidence.iter().all(|e| e.holds) { Status::Holds } else { Status::Fails };
        self
    }

    /// Asymptotic reading: passes on a tail of at least `tail` points holds,
    /// a failure at the last point fails, anything else is inconclusive.
    fn conclude_tail(mut self, tail: usize) -> Self {
        let n = self.evidence.len();
        let passing_tail = self.evidence.iter().rev().take_while(|e| e.holds).count();
        self.status = if n > 0 && !self.evidence[n - 1].holds {
            Status::Fails
        } else if passing_tail >= tail.min(n) && n > 0 {
            Status::Holds
        } else {
            Status::Inconclusive
        };
        self
    }

    /// Whole-window reading: holds only when every point passes.
    fn conclude_window(mut self) -> Self {
        let n = self.evidence.len();
        self.status = if n > 0 && self.evidence.iter().all(|e| e.holds) {
            Status::Holds
        } else if n > 0 && !self.evidence[n - 1].holds {
            Status::Fails
        } else {
            Status::Inconclusive
        };
        self
    }
}

/// Window sizes and search parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Windows {
    pub red_bound: usize,
    pub n_window: RangeInclusive<usize>,
    pub r_window: RangeInclusive<usize>,
    pub s_window: RangeInclusive<usize>,
    pub j_window: RangeInclusive<usize>,
    /// Extra powers at which `JI^m = I^{m+1}` is re-checked after the reduction number.
    pub persistence: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for Windows {
    fn default() -> Self {
        Windows {
            red_bound: 10,
            n_window: 1..=6,
            r_window: 1..=5,
            s_window: 0..=3,
            j_window: 1..=8,
            persistence: 2,
            trials: 20,
            seed: 1,
        }
    }
}

/// Ideal arithmetic shared by polynomial and semigroup ideals, enough for
/// the intersection conditions and reduction numbers.
pub trait IdealArith: Clone {
    fn power_of(&self, n: u32) -> Result<Self>;
    fn times(&self, other: &Self) -> Result<Self>;
    fn meet(&self, other: &Self) -> Result<Self>;
    /// Generators of `self` not contained in `other`, rendered.
    fn outside(&self, other: &Self) -> Result<Option<String>>;
    fn frobenius(&self, n: u32) -> Self;
    /// `J I^n = I^{n+1}` in the local ring, for `self = J ⊆ I`.
    fn reduces(&self, i: &Self, n: usize) -> Result<bool>;
    fn contained_in(&self, other: &Self) -> Result<bool>;
}

impl<K: Field> IdealArith for Ideal<K> {
    fn power_of(&self, n: u32) -> Result<Self> {
        self.power(n)
    }
    fn times(&self, other: &Self) -> Result<Self> {
        self.product(other)
    }
    fn meet(&self, other: &Self) -> Result<Self> {
        self.intersection(other)
    }
    fn outside(&self, other: &Self) -> Result<Option<String>> {
        for g in self.gens() {
            if !other.contains(g)? {
                return Ok(Some(g.render(self.ring().names())));
            }
        }
        Ok(None)
    }
    fn frobenius(&self, n: u32) -> Self {
        self.frobenius_power(n)
    }
    fn reduces(&self, i: &Self, n: usize) -> Result<bool> {
        reduces_locally(self, i, n)
    }
    fn contained_in(&self, other: &Self) -> Result<bool> {
        other.contains_ideal(self)
    }
}

impl IdealArith for SemigroupIdeal {
    fn power_of(&self, n: u32) -> Result<Self> {
        Ok(self.power(n))
    }
    fn times(&self, other: &Self) -> Result<Self> {
        Ok(self.product(other))
    }
    fn meet(&self, other: &Self) -> Result<Self> {
        Ok(self.intersection(other))
    }
    fn outside(&self, other: &Self) -> Result<Option<String>> {
        Ok(self.gens().iter().find(|g| !other.contains(g)).map(|g| g.to_string()))
    }
    fn frobenius(&self, n: u32) -> Self {
        self.frobenius_power(n)
    }
    fn reduces(&self, i: &Self, n: usize) -> Result<bool> {
        let lhs = self.product(&i.power(n as u32));
        Ok(lhs.equals(&i.power(n as u32 + 1)))
    }
    fn contained_in(&self, other: &Self) -> Result<bool> {
        Ok(other.contains_ideal(self))
    }
}

/// `J I^n = I^{n+1}` in the local ring: by Nakayama, the products of
/// generators must span `I^{n+1}/mI^{n+1}`.
pub fn reduces_locally<K: Field>(j: &Ideal<K>, i: &Ideal<K>, n: usize) -> Result<bool> {
    let target = i.power(n as u32 + 1)?;
    let base = i.power(n as u32)?;
    let mut prods = Vec::with_capacity(j.gens().len() * base.gens().len());
    for a in j.gens() {
        for b in base.gens() {
            prods.push(a.mul(b));
        }
    }
    let space = FiberSpace::new(&target)?;
    Ok(space.rank_of(&prods) == space.dim())
}

/// A reduction `J` of `I` with its reduction number.
#[derive(Clone, Debug)]
pub struct ReductionRecord<T> {
    pub j: T,
    pub red_number: usize,
    /// Powers `m` at which `J I^m = I^{m+1}` was confirmed.
    pub verified_at: Vec<usize>,
    /// Random trials used by the search (zero for a given `J`).
    pub trials: usize,
}

/// `red_J(I)`: the least `n <= bound` with `J I^n = I^{n+1}`, re-checked at
/// `persistence` further powers.
pub fn reduction_number<T: IdealArith>(j: &T, i: &T, bound: usize, persistence: usize) -> Result<ReductionRecord<T>> {
    if !j.contained_in(i)? {
        return Err(Error::Containment("J is not contained in I".into()));
    }
    for n in 0..=bound {
        if j.reduces(i, n)? {
            let mut verified_at = vec![n];
            for m in n + 1..=n + persistence {
                if !j.reduces(i, m)? {
                    return Err(Error::InternalInconsistency(format!(
                        "J I^{n} = I^{} but J I^{m} != I^{}",
                        n + 1,
                        m + 1
                    )));
                }
                verified_at.push(m);
            }
            return Ok(ReductionRecord { j: j.clone(), red_number: n, verified_at, trials: 0 });
        }
    }
    Err(Error::NotAReductionWithinBound { bound })
}

/// Coefficient pool for random combinations: `±1..±5`.
fn random_coefficient<K: Field>(rng: &mut ChaCha8Rng) -> K {
    let v: i64 = rng.gen_range(1..=5);
    K::from_i64(if rng.gen_bool(0.5) { v } else { -v })
}

/// `count` random combinations of the generators of `I`.
pub fn random_elements<K: Field>(i: &Ideal<K>, count: usize, rng: &mut ChaCha8Rng) -> Vec<Polynomial<K>> {
    (0..count)
        .map(|_| {
            let mut f = i.ring().zero();
            for g in i.gens() {
                f = f.add(&g.scale(&random_coefficient::<K>(rng)));
            }
            f
        })
        .collect()
}

/// Searches for a minimal reduction generated by `spread` random
/// combinations of the generators of `I`.
pub fn find_minimal_reduction<K: Field>(
    i: &Ideal<K>,
    spread: usize,
    w: &Windows,
) -> Result<ReductionRecord<Ideal<K>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(w.seed);
    for trial in 1..=w.trials {
        let gens = random_elements(i, spread, &mut rng);
        if gens.iter().any(|g| g.is_zero()) {
            continue;
        }
        let j = Ideal::new(i.ring(), gens)?;
        match reduction_number(&j, i, w.red_bound, w.persistence) {
            Ok(mut rec) => {
                rec.trials = trial;
                return Ok(rec);
            }
            Err(Error::NotAReductionWithinBound { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SearchExhausted { trials: w.trials })
}

/// `red_{J^{[n]}}(I^n)` for each `n` of the window.
pub fn frobenius_reduction_numbers<T: IdealArith>(
    i: &T,
    j: &T,
    window: impl IntoIterator<Item = usize>,
    bound: usize,
    persistence: usize,
) -> Result<Vec<(usize, Option<usize>)>> {
    let mut out = Vec::new();
    for n in window {
        let jn = j.frobenius(n as u32);
        let i_n = i.power_of(n as u32)?;
        match reduction_number(&jn, &i_n, bound, persistence) {
            Ok(rec) => out.push((n, Some(rec.red_number))),
            Err(Error::NotAReductionWithinBound { .. }) => out.push((n, None)),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// The asymptotic reduction number read off `red_{J^{[n]}}(I^n)` over the
/// window: the common value of the last three points, if they agree.
pub fn asymptotic_reduction_number<T: IdealArith>(
    i: &T,
    j: &T,
    w: &Windows,
) -> Result<(Option<usize>, VerdictReport)> {
    let values = frobenius_reduction_numbers(i, j, w.n_window.clone(), w.red_bound, w.persistence)?;
    let mut report = VerdictReport::new("asymptotic reduction number");
    for (n, r) in &values {
        let detail = Some(match r {
            Some(r) => format!("red = {r}"),
            None => format!("not a reduction within {}", w.red_bound),
        });
        report.record(vec![*n], r.is_some(), detail);
    }
    let tail: Vec<Option<usize>> = values.iter().rev().take(3).map(|(_, r)| *r).collect();
    let stable = if tail.len() == 3 && tail.iter().all(|r| r.is_some() && *r == tail[0]) { tail[0] } else { None };
    report.status = if stable.is_some() { Status::Holds } else { Status::Inconclusive };
    if stable.is_none() {
        report.note = Some("values did not agree on the last three window points".into());
    }
    Ok((stable, report))
}

/// Sign of the a-invariant of `G(I)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Sign {
    Negative,
    Nonnegative,
    Inconclusive,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "NEGATIVE",
            Sign::Nonnegative => "NONNEGATIVE",
            Sign::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// The sign of `a(I)` from the asymptotic reduction number: it is `ℓ - 1`
/// when `a(I) < 0` and `ℓ` otherwise.
///
/// With `certified_from = Some(c)` the caller asserts that
/// `red_{J^{[n]}}(I^n)` is already the asymptotic value at `n = c` (proved
/// independently), and that single power decides.
pub fn a_invariant_sign<T: IdealArith>(
    i: &T,
    j: &T,
    spread: usize,
    w: &Windows,
    certified_from: Option<usize>,
) -> Result<(Sign, Option<usize>, VerdictReport)> {
    let (r, mut report) = match certified_from {
        Some(c) => {
            let values = frobenius_reduction_numbers(i, j, [c], w.red_bound, w.persistence)?;
            let mut report = VerdictReport::new("a-invariant sign");
            let r = values[0].1;
            report.record(vec![c], r.is_some(), r.map(|r| format!("red = {r}")));
            report.note = Some(format!("asymptotic range asserted from n = {c}"));
            (r, report)
        }
        None => {
            let (r, mut report) = asymptotic_reduction_number(i, j, w)?;
            report.property = "a-invariant sign".into();
            (r, report)
        }
    };
    let sign = match r {
        Some(r) if r + 1 == spread => Sign::Negative,
        Some(r) if r == spread => Sign::Nonnegative,
        Some(r) => {
            report.note = Some(format!(
                "reduction number {r} is neither spread - 1 nor spread; the window is pre-asymptotic"
            ));
            Sign::Inconclusive
        }
        None => Sign::Inconclusive,
    };
    report.status = if sign == Sign::Inconclusive { Status::Inconclusive } else { Status::Holds };
    Ok((sign, r, report))
}

/// `x_1, ..., x_k` is a regular sequence in `A`:
/// `((x_1..x_{i-1}) : x_i) = (x_1..x_{i-1})` for each `i`, and the
/// elements generate a proper ideal.
pub fn is_regular_sequence<K: Field>(ring: &std::sync::Arc<crate::localring::AmbientRing<K>>, xs: &[Polynomial<K>]) -> Result<bool> {
    if xs.is_empty() {
        return Err(Error::Structural("empty sequence".into()));
    }
    for x in xs {
        ring.check(x)?;
        if x.terms().iter().any(|(m, _)| m.is_one()) {
            return Err(Error::Structural("sequence elements must lie in the maximal ideal".into()));
        }
    }
    for k in 0..xs.len() {
        let prev = Ideal::new(ring, xs[..k].to_vec())?;
        let colon = prev.quotient_elem(&xs[k])?;
        if !prev.contains_ideal(&colon)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Evidence about `grade(I)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradeEvidence {
    /// A regular sequence found inside `I`.
    pub sequence: Vec<String>,
    /// Lower bound `grade(I) >= sequence length`.
    pub lower: usize,
    /// Exact value when certified (maximality witness or height in a polynomial ring).
    pub exact: Option<usize>,
    pub method: String,
}

/// Finds a maximal regular sequence in `I` greedily among the generators and
/// random combinations, and certifies its maximality when
/// `((x) : I) != (x)`, which says every element of `I` is a zero divisor
/// modulo `(x)`.
pub fn grade_evidence<K: Field>(i: &Ideal<K>, w: &Windows) -> Result<GradeEvidence> {
    let ring = i.ring();
    if ring.is_polynomial_ring() {
        let h = ring.nvars() - krull_dim(i)?;
        return Ok(GradeEvidence {
            sequence: Vec::new(),
            lower: h,
            exact: Some(h),
            method: "height in a polynomial ring".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(w.seed);
    let mut candidates: Vec<Polynomial<K>> = i.gens().to_vec();
    candidates.extend(random_elements(i, w.trials, &mut rng));
    let mut seq: Vec<Polynomial<K>> = Vec::new();
    loop {
        let mut extended = false;
        for c in &candidates {
            if seq.contains(c) {
                continue;
            }
            let mut trial = seq.clone();
            trial.push(c.clone());
            if is_regular_sequence(ring, &trial)? {
                seq = trial;
                extended = true;
                break;
            }
        }
        if !extended || seq.len() == ring.nvars() {
            break;
        }
    }
    let names = ring.names();
    let current = if seq.is_empty() { Ideal::zero(ring) } else { Ideal::new(ring, seq.clone())? };
    let colon = current.quotient(i)?;
    let certified = !current.contains_ideal(&colon)?;
    Ok(GradeEvidence {
        sequence: seq.iter().map(|f| f.render(names)).collect(),
        lower: seq.len(),
        exact: certified.then_some(seq.len()),
        method: if certified {
            "maximal regular sequence with ((x) : I) != (x)".into()
        } else {
            "greedy regular sequence (lower bound only)".into()
        },
    })
}

fn render<K: Field>(i: &Ideal<K>, f: &Polynomial<K>) -> String {
    f.render(i.ring().names())
}

/// `(x) ∩ I^r m^s = x I^{r-1} m^s` over the `(r, s)` windows with `r >= r0`.
pub fn is_rees_superficial<K: Field>(x: &Polynomial<K>, i: &Ideal<K>, r0: usize, w: &Windows) -> Result<VerdictReport> {
    if !i.contains(x)? {
        return Err(Error::HypothesisViolation(format!("{} is not in I", render(i, x))));
    }
    let ring = i.ring();
    let m = Ideal::maximal(ring);
    let principal = Ideal::new(ring, vec![x.clone()])?;
    let mut report = VerdictReport::new("Rees-superficial");
    for r in w.r_window.clone().filter(|&r| r >= r0.max(1)) {
        for s in w.s_window.clone() {
            let irms = i.power(r as u32)?.product(&m.power(s as u32)?)?;
            let lhs = principal.intersection(&irms)?;
            let rhs = principal.product(&i.power(r as u32 - 1)?)?.product(&m.power(s as u32)?)?;
            let out = lhs.outside(&rhs)?;
            if let (Some(e), None) = (&out, &report.witness) {
                report.witness = Some(Witness { point: vec![r, s], element: e.clone() });
            }
            report.record(vec![r, s], out.is_none(), None);
        }
    }
    Ok(report.conclude_all())
}

/// `x ∈ I \ mI`, required by the element tests on fiber cones.
fn require_minimal_generator<K: Field>(x: &Polynomial<K>, i: &Ideal<K>) -> Result<()> {
    if !i.contains(x)? {
        return Err(Error::HypothesisViolation(format!("{} is not in I", render(i, x))));
    }
    if i.times_maximal()?.contains(x)? {
        return Err(Error::HypothesisViolation(format!("{} lies in mI", render(i, x))));
    }
    Ok(())
}

/// `(I^{n+1} : x) ∩ I^c = I^n` for `n` in the window, `c` its first point.
pub fn is_superficial<K: Field>(x: &Polynomial<K>, i: &Ideal<K>, w: &Windows) -> Result<VerdictReport> {
    require_minimal_generator(x, i)?;
    let c = *w.n_window.start();
    let ic = i.power(c as u32)?;
    let mut report = VerdictReport::new("superficial");
    for n in w.n_window.clone() {
        let lhs = i.power(n as u32 + 1)?.quotient_elem(x)?.intersection(&ic)?;
        let rhs = i.power(n as u32)?;
        let out = lhs.outside(&rhs)?;
        if let (Some(e), None) = (&out, &report.witness) {
            report.witness = Some(Witness { point: vec![n], element: e.clone() });
        }
        report.record(vec![n], out.is_none(), None);
    }
    Ok(report.conclude_all())
}

/// Injectivity of multiplication by `x°` from `F(I)_j` to `F(I)_{j+1}`,
/// i.e. `(mI^{j+1} : x) ∩ I^j = mI^j`. Returns a kernel witness on failure.
pub fn fiber_multiplication_injective<K: Field>(x: &Polynomial<K>, i: &Ideal<K>, j: usize) -> Result<Option<String>> {
    let ij = i.power(j as u32)?;
    let src = FiberSpace::new(&ij)?;
    let dst = FiberSpace::new(&i.power(j as u32 + 1)?)?;
    let images: Vec<Polynomial<K>> = src.basis().iter().map(|b| x.mul(b)).collect();
    if dst.rank_of(&images) == src.dim() {
        return Ok(None);
    }
    // first basis element whose image depends on the earlier ones
    for k in 1..=images.len() {
        if dst.rank_of(&images[..k]) < k {
            return Ok(Some(format!("a combination ending in {}", render(i, &src.basis()[k - 1]))));
        }
    }
    Ok(Some("kernel element".into()))
}

/// The ideal-theoretic form `(mI^{j+1} : x) ∩ I^j = mI^j`, evaluated directly.
pub fn filter_regular_colon_check<K: Field>(x: &Polynomial<K>, i: &Ideal<K>, j: usize) -> Result<bool> {
    let ij = i.power(j as u32)?;
    let lhs = i.power(j as u32 + 1)?.times_maximal()?.quotient_elem(x)?.intersection(&ij)?;
    ij.times_maximal()?.contains_ideal(&lhs)
}

/// `x°` is filter-regular on `F(I)`: tested for `j` in the window; holds when
/// the last three points pass.
pub fn is_filter_regular<K: Field>(x: &Polynomial<K>, i: &Ideal<K>, w: &Windows) -> Result<VerdictReport> {
    require_minimal_generator(x, i)?;
    filter_regular_window(x, i, w)
}

fn filter_regular_window<K: Field>(x: &Polynomial<K>, i: &Ideal<K>, w: &Windows) -> Result<VerdictReport> {
    let mut report = VerdictReport::new("filter-regular");
    for j in w.j_window.clone() {
        let out = fiber_multiplication_injective(x, i, j)?;
        if let (Some(e), None) = (&out, &report.witness) {
            report.witness = Some(Witness { point: vec![j], element: e.clone() });
        }
        report.record(vec![j], out.is_none(), None);
    }
    let mut report = report.conclude_tail(3);
    if report.status == Status::Fails {
        // report the failure closest to the asymptotic end
        let last = report.evidence.last().unwrap().point.clone();
        let e = fiber_multiplication_injective(x, i, last[0])?.unwrap_or_default();
        report.witness = Some(Witness { point: last, element: e });
    }
    Ok(report)
}

/// `(x^n)°` is filter-regular on `F(I^n)`: `(mI^{n(j+1)} : x^n) ∩ I^{nj} = mI^{nj}`.
///
/// `x^n` may fall into `mI^n` (for instance when `x` is nilpotent); the
/// class `(x^n)°` is then zero and the test fails.
pub fn power_filter_regular_transfer<K: Field>(
    x: &Polynomial<K>,
    i: &Ideal<K>,
    n: u32,
    w: &Windows,
) -> Result<VerdictReport> {
    if !i.contains(x)? {
        return Err(Error::HypothesisViolation(format!("{} is not in I", render(i, x))));
    }
    let mut report = filter_regular_window(&x.pow(n), &i.power(n)?, w)?;
    report.property = format!("filter-regular power transfer (n = {n})");
    Ok(report)
}

/// Valabrega–Valla condition `I^n ∩ J = J I^{n-1}` over a window.
pub fn valabrega_valla<T: IdealArith>(j: &T, i: &T, window: RangeInclusive<usize>) -> Result<VerdictReport> {
    if !j.contained_in(i)? {
        return Err(Error::Containment("J is not contained in I".into()));
    }
    let mut report = VerdictReport::new("Valabrega-Valla");
    for n in window.filter(|&n| n >= 1) {
        let lhs = i.power_of(n as u32)?.meet(j)?;
        let rhs = j.times(&i.power_of(n as u32 - 1)?)?;
        let out = lhs.outside(&rhs)?;
        if let (Some(e), None) = (&out, &report.witness) {
            report.witness = Some(Witness { point: vec![n], element: e.clone() });
        }
        report.record(vec![n], out.is_none(), None);
    }
    Ok(report.conclude_all())
}

/// `I^{2n} ∩ J^{[n]} = J^{[n]} I^n` over a window.
pub fn v2_infinity<T: IdealArith>(i: &T, j: &T, window: RangeInclusive<usize>) -> Result<VerdictReport> {
    let mut report = VerdictReport::new("V2-infinity");
    for n in window.filter(|&n| n >= 1) {
        let jn = j.frobenius(n as u32);
        let lhs = i.power_of(2 * n as u32)?.meet(&jn)?;
        let rhs = jn.times(&i.power_of(n as u32)?)?;
        let out = lhs.outside(&rhs)?;
        if let (Some(e), None) = (&out, &report.witness) {
            report.witness = Some(Witness { point: vec![n], element: e.clone() });
        }
        report.record(vec![n], out.is_none(), None);
    }
    Ok(report.conclude_window())
}

/// True when some generator of `I` is a nonzerodivisor of `A`.
pub fn has_regular_generator<K: Field>(i: &Ideal<K>) -> Result<bool> {
    for g in i.gens() {
        if is_regular_sequence(i.ring(), std::slice::from_ref(g))? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The Ratliff–Rush closure `∪ (I^{n+1} : I^n)`, accumulated until two
/// consecutive partial unions agree. Returns the closure and the `n` at
/// which it stabilized.
pub fn ratliff_rush<K: Field>(i: &Ideal<K>, bound: usize) -> Result<(Ideal<K>, usize)> {
    if !has_regular_generator(i)? {
        return Err(Error::HypothesisViolation("no generator of I is a nonzerodivisor".into()));
    }
    let mut acc = i.clone();
    for n in 1..=bound {
        let step = i.power(n as u32 + 1)?.quotient(&i.power(n as u32)?)?;
        let next = acc.sum(&step)?;
        if acc.contains_ideal(&next)? && n > 1 {
            return Ok((acc, n));
        }
        acc = next;
    }
    Err(Error::NoStabilization { nmax: bound })
}
