//! The Koszul-type complexes `C•(I^n)` (spread two) and `D•(I^n)` (spread
//! three) built from a minimal reduction, the resolution of `F(I^n)` over
//! `F(J^{[n]})` when the spread is two, and checkers for the fiber
//! coefficient inequalities.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{Field, Polynomial};
use crate::groebner::Ideal;
use crate::invariants::{extract_coefficients, fiber_hilbert, hilbert_samuel, HilbertData};
use crate::linalg::dense_rank;
use crate::localring::{is_m_primary, min_gens, FiberSpace};
use crate::reductions::{
    a_invariant_sign, find_minimal_reduction, grade_evidence, is_rees_superficial, is_regular_sequence,
    reduction_number, v2_infinity, Sign, Status, VerdictReport, Windows,
};

/// A bounded complex of finite-dimensional `k`-spaces
/// `0 → X_top → … → X_1 → X_0 → 0`.
#[derive(Clone, Debug)]
pub struct FiniteComplex<K: Field> {
    /// `dims[i] = dim X_i`.
    pub dims: Vec<usize>,
    /// `maps[i-1]` is `d_i: X_i → X_{i-1}` as a `dims[i-1] × dims[i]` matrix.
    pub maps: Vec<Vec<Vec<K>>>,
    /// `homology[i] = dim H_i`.
    pub homology: Vec<usize>,
}

impl<K: Field> FiniteComplex<K> {
    /// Builds a complex from its differentials and computes homology by rank.
    pub fn from_maps(dims: Vec<usize>, maps: Vec<Vec<Vec<K>>>) -> Result<Self> {
        if maps.len() + 1 != dims.len() {
            return Err(Error::Structural("a complex needs one map between consecutive spaces".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.len() != dims[i] || m.iter().any(|row| row.len() != dims[i + 1]) {
                return Err(Error::Structural(format!("map d_{} has the wrong shape", i + 1)));
            }
        }
        let homology = homology_dims(&dims, &maps);
        Ok(FiniteComplex { dims, maps, homology })
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    /// Dimensions listed from the top degree down.
    pub fn dims_descending(&self) -> Vec<usize> {
        self.dims.iter().rev().cloned().collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating(&self.dims)
    }
}

fn alternating(v: &[usize]) -> i64 {
    v.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
}

fn homology_dims<K: Field>(dims: &[usize], maps: &[Vec<Vec<K>>]) -> Vec<usize> {
    let ranks: Vec<usize> = maps.iter().map(|m| dense_rank(m)).collect();
    (0..dims.len())
        .map(|i| {
            let out_rank = if i == 0 { 0 } else { ranks[i - 1] };
            let in_rank = if i < maps.len() { ranks[i] } else { 0 };
            dims[i].saturating_sub(out_rank + in_rank)
        })
        .collect()
}

fn compose<K: Field>(a: &[Vec<K>], b: &[Vec<K>]) -> Vec<Vec<K>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    let mut s = K::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][c].is_zero() {
                            s = s.add(&row[k].mul(&b[k][c]));
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Verifies `d ∘ d = 0`, that the stored homology matches a recomputation,
/// and the Euler identity `Σ(-1)^i dim X_i = Σ(-1)^i dim H_i`.
pub fn euler_check<K: Field>(c: &FiniteComplex<K>) -> Result<bool> {
    for i in 1..c.maps.len() {
        let dd = compose(&c.maps[i - 1], &c.maps[i]);
        if dd.iter().flatten().any(|e| !e.is_zero()) {
            return Err(Error::InternalInconsistency(format!("d_{} ∘ d_{} is not zero", i, i + 1)));
        }
    }
    if homology_dims(&c.dims, &c.maps) != c.homology {
        return Err(Error::InternalInconsistency("stored homology does not match the maps".into()));
    }
    if alternating(&c.dims) != alternating(&c.homology) {
        return Err(Error::InternalInconsistency("Euler characteristics of spaces and homology differ".into()));
    }
    Ok(true)
}

/// A direct sum of copies of `U/mU` for the listed ideals.
struct SumSpace<K: Field> {
    slots: Vec<FiberSpace<K>>,
}

impl<K: Field> SumSpace<K> {
    fn dim(&self) -> usize {
        self.slots.iter().map(|s| s.dim()).sum()
    }

    fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.slots
            .iter()
            .map(|s| {
                let o = acc;
                acc += s.dim();
                o
            })
            .collect()
    }
}

/// The matrix of the map sending a basis element `b` in source slot `s` to
/// `Σ_t mult[t][s] · b` in target slot `t`.
fn multiplication_matrix<K: Field>(
    source: &SumSpace<K>,
    target: &mut SumSpace<K>,
    mult: &[Vec<Option<Polynomial<K>>>],
) -> Result<Vec<Vec<K>>> {
    let rows = target.dim();
    let cols = source.dim();
    let mut m = vec![vec![K::zero(); cols]; rows];
    let (so, to) = (source.offsets(), target.offsets());
    for (s, slot) in source.slots.iter().enumerate() {
        for (bi, b) in slot.basis().iter().enumerate() {
            for t in 0..target.slots.len() {
                if let Some(f) = &mult[t][s] {
                    let coords = target.slots[t].coordinates(&f.mul(b))?;
                    for (k, c) in coords.into_iter().enumerate() {
                        m[to[t] + k][so[s] + bi] = c;
                    }
                }
            }
        }
    }
    Ok(m)
}

fn sum_space<K: Field>(ideals: &[&Ideal<K>]) -> Result<SumSpace<K>> {
    Ok(SumSpace { slots: ideals.iter().map(|u| FiberSpace::new(u)).collect::<Result<_>>()? })
}

fn reduction_generators<K: Field>(i: &Ideal<K>, j: &Ideal<K>, spread: usize) -> Result<()> {
    if j.gens().len() != spread {
        return Err(Error::HypothesisViolation(format!(
            "the reduction must have {spread} generators, found {}",
            j.gens().len()
        )));
    }
    if !i.contains_ideal(j)? {
        return Err(Error::Containment("J is not contained in I".into()));
    }
    Ok(())
}

/// `C•(I^n)`: `0 → A/m → (I^n/mI^n)^2 → I^nJ^{[n]}/mI^nJ^{[n]} → 0` with
/// `a ↦ (-y_2 a, y_1 a)` and `(a, b) ↦ y_1 a + y_2 b`, `y_i = x_i^n`.
pub fn build_complex_c<K: Field>(i: &Ideal<K>, j: &Ideal<K>, n: u32) -> Result<FiniteComplex<K>> {
    reduction_generators(i, j, 2)?;
    let ring = i.ring();
    let jn = j.frobenius_power(n);
    let y: Vec<Polynomial<K>> = j.gens().iter().map(|g| g.pow(n)).collect();
    let i_n = i.power(n)?;
    let ij = i_n.product(&jn)?;
    let unit = Ideal::unit(ring);
    let x2 = sum_space(&[&unit])?;
    let mut x1 = sum_space(&[&i_n, &i_n])?;
    let mut x0 = sum_space(&[&ij])?;
    let d2 = multiplication_matrix(&x2, &mut x1, &[vec![Some(y[1].neg())], vec![Some(y[0].clone())]])?;
    let d1 = multiplication_matrix(&x1, &mut x0, &[vec![Some(y[0].clone()), Some(y[1].clone())]])?;
    let c = FiniteComplex::from_maps(vec![x0.dim(), x1.dim(), x2.dim()], vec![d1, d2])?;
    euler_check(&c)?;
    if c.homology[0] != 0 || c.homology[2] != 0 {
        return Err(Error::HypothesisViolation(format!(
            "outer homology of C• is nonzero ({:?}); J is not a reduction with analytically independent generators",
            c.homology
        )));
    }
    Ok(c)
}

/// `D•(I^n)`: `0 → A/m → (I^n/mI^n)^3 → (I^{2n}/mI^{2n})^3 → I^{2n}J^{[n]}/mI^{2n}J^{[n]} → 0`
/// with `a ↦ (y_3 a, -y_2 a, y_1 a)`,
/// `(a, b, c) ↦ (-y_2 a - y_3 b, y_1 a - y_3 c, y_1 b + y_2 c)` and
/// `(a, b, c) ↦ y_1 a + y_2 b + y_3 c`.
pub fn build_complex_d<K: Field>(i: &Ideal<K>, j: &Ideal<K>, n: u32) -> Result<FiniteComplex<K>> {
    reduction_generators(i, j, 3)?;
    let ring = i.ring();
    let jn = j.frobenius_power(n);
    let y: Vec<Polynomial<K>> = j.gens().iter().map(|g| g.pow(n)).collect();
    let i_n = i.power(n)?;
    let i2n = i.power(2 * n)?;
    let top = i2n.product(&jn)?;
    let unit = Ideal::unit(ring);
    let x3 = sum_space(&[&unit])?;
    let mut x2 = sum_space(&[&i_n, &i_n, &i_n])?;
    let mut x1 = sum_space(&[&i2n, &i2n, &i2n])?;
    let mut x0 = sum_space(&[&top])?;
    let s = |f: &Polynomial<K>| Some(f.clone());
    let neg = |f: &Polynomial<K>| Some(f.neg());
    let d3 = multiplication_matrix(&x3, &mut x2, &[vec![s(&y[2])], vec![neg(&y[1])], vec![s(&y[0])]])?;
    let d2 = multiplication_matrix(
        &x2,
        &mut x1,
        &[
            vec![neg(&y[1]), neg(&y[2]), None],
            vec![s(&y[0]), None, neg(&y[2])],
            vec![None, s(&y[0]), s(&y[1])],
        ],
    )?;
    let d1 = multiplication_matrix(&x1, &mut x0, &[vec![s(&y[0]), s(&y[1]), s(&y[2])]])?;
    let c = FiniteComplex::from_maps(vec![x0.dim(), x1.dim(), x2.dim(), x3.dim()], vec![d1, d2, d3])?;
    euler_check(&c)?;
    if c.homology[0] != 0 || c.homology[3] != 0 {
        return Err(Error::HypothesisViolation(format!(
            "outer homology of D• is nonzero ({:?}); J is not a reduction with analytically independent generators",
            c.homology
        )));
    }
    Ok(c)
}

/// `1 - 2μ(I^n) + μ(I^nJ^{[n]})`, computed from minimal generator counts.
pub fn c_euler_from_generators<K: Field>(i: &Ideal<K>, j: &Ideal<K>, n: u32) -> Result<i64> {
    let i_n = i.power(n)?;
    let ij = i_n.product(&j.frobenius_power(n))?;
    Ok(1 - 2 * min_gens(&i_n)? as i64 + min_gens(&ij)? as i64)
}

/// `-1 + 3μ(I^n) - 3μ(I^{2n}) + μ(I^{2n}J^{[n]})`, computed from minimal generator counts.
pub fn d_euler_from_generators<K: Field>(i: &Ideal<K>, j: &Ideal<K>, n: u32) -> Result<i64> {
    let i_n = i.power(n)?;
    let i2n = i.power(2 * n)?;
    let top = i2n.product(&j.frobenius_power(n))?;
    Ok(-1 + 3 * min_gens(&i_n)? as i64 - 3 * min_gens(&i2n)? as i64 + min_gens(&top)? as i64)
}

/// The resolution `0 → ⊕ F(J^{[n]})(-1-α_i) → F(J^{[n]}) ⊕ F(J^{[n]})(-1)^{β_0 - 1} → F(I^n) → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionData {
    pub n: u32,
    pub beta0: usize,
    pub beta1: usize,
    /// Shifts of the relations, sorted.
    pub alphas: Vec<usize>,
    /// Relations with `α = 0` found in the degree-one presentation.
    pub alpha_zero: usize,
    /// Rank of the free part beyond the degree-zero generator.
    pub p: usize,
    /// `dim S_j` for `j = 0..`, `S = F(I^n)/y_1° F(I^n)`.
    pub s_dims: Vec<usize>,
    /// Index (0 or 1) of the generator of `J` whose power was used as the regular element.
    pub regular_index: usize,
    /// Whether a nonzero kernel `K_n` remains (regularity not established).
    pub kernel_present: bool,
    /// `1 + (β_0 - 1) z - Σ z^{1+α_i}`.
    pub numerator: Vec<i64>,
    /// The numerator agrees with the fiber series of `I^n`.
    pub hilbert_consistent: bool,
}

impl ResolutionData {
    pub fn alpha_sum(&self) -> usize {
        self.alphas.iter().sum()
    }
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

/// Degree-wise data of `F(I')` needed for `S = F(I')/y° F(I')`.
fn quotient_dims<K: Field>(ip: &Ideal<K>, y: &Polynomial<K>, jmax: usize) -> Result<Option<Vec<usize>>> {
    let mut dims = vec![1];
    let mut prev = FiberSpace::new(&Ideal::unit(ip.ring()))?;
    for j in 1..=jmax {
        let cur = FiberSpace::new(&ip.power(j as u32)?)?;
        let images: Vec<Polynomial<K>> = prev.basis().iter().map(|b| y.mul(b)).collect();
        let r = cur.rank_of(&images);
        if r != prev.dim() {
            return Ok(None);
        }
        dims.push(cur.dim() - r);
        prev = cur;
    }
    Ok(Some(dims))
}

/// Minimal resolution of `F(I^n)` over `F(J^{[n]})` for a spread-two ideal,
/// read off the quotient `S` by a regular linear form: over the principal
/// ideal domain `k[y_2°]`, `S ≅ R ⊕ R(-1)^p ⊕ ⊕ R(-1)/(Y^{α_i})`.
pub fn fiber_resolution<K: Field>(i: &Ideal<K>, j: &Ideal<K>, n: u32, nmax: usize) -> Result<ResolutionData> {
    reduction_generators(i, j, 2)?;
    let ip = i.power(n)?;
    let jp = j.frobenius_power(n);
    let y: Vec<Polynomial<K>> = j.gens().iter().map(|g| g.pow(n)).collect();
    let red = reduction_number(&jp, &ip, 1, 0).map_err(|e| match e {
        Error::NotAReductionWithinBound { .. } => Error::HypothesisViolation(format!(
            "J^[{n}] I^{n} != I^{}: the power is outside the range where the reduction number is one",
            2 * n
        )),
        e => e,
    })?;
    debug_assert!(red.red_number <= 1);
    let fh = fiber_hilbert(&ip, nmax)?;
    let num = trim(fh.form()?.numerator.clone());
    // relations live in degrees 1 + α ≤ deg h; three constant dims past that
    let mut jmax = num.len() + 3;
    let mut chosen = None;
    for idx in [0usize, 1] {
        if let Some(d) = quotient_dims(&ip, &y[idx], jmax)? {
            chosen = Some((idx, d));
            break;
        }
    }
    let (idx, mut dims) = chosen.ok_or_else(|| {
        Error::RegularityNotEstablished(format!(
            "neither x_1^{n}° nor x_2^{n}° is injective on F(I^{n}) up to degree {jmax}"
        ))
    })?;
    while dims.len() >= 3 && !dims[dims.len() - 3..].windows(2).all(|w| w[0] == w[1]) {
        jmax += 1;
        dims = quotient_dims(&ip, &y[idx], jmax)?.ok_or_else(|| {
            Error::RegularityNotEstablished(format!("x_{}^{n}° is not injective in degree {jmax}", idx + 1))
        })?;
    }
    let other = &y[1 - idx];
    let p = dims[dims.len() - 1] - 1;
    let at_least = |jj: usize| dims[jj] - 1 - p;
    let mut alphas = Vec::new();
    for jj in 1..dims.len() {
        let here = at_least(jj);
        let next = if jj + 1 < dims.len() { at_least(jj + 1) } else { 0 };
        if next > here {
            return Err(Error::InternalInconsistency("quotient dimensions are not eventually decreasing".into()));
        }
        alphas.extend(std::iter::repeat_n(jj, here - next));
    }
    // degree-one presentation: generators 1 (with Y·1 = y_other) and a
    // complement of span(y_1, y_2) in I'/mI'; its kernel counts α = 0
    let fs = FiberSpace::new(&ip)?;
    let mut gens: Vec<Polynomial<K>> = vec![y[idx].clone(), other.clone()];
    let independent = fs.rank_of(&gens);
    let mut degree_one = 0;
    for b in fs.basis() {
        gens.push(b.clone());
        if fs.rank_of(&gens) == independent + degree_one + 1 {
            degree_one += 1;
        } else {
            gens.pop();
        }
    }
    let presented = 1 + degree_one;
    let alpha_zero = presented.checked_sub(dims[1]).ok_or_else(|| {
        Error::InternalInconsistency("degree-one generators do not span S_1".into())
    })?;
    let q = alphas.len() + alpha_zero;
    let beta0 = 1 + p + q;
    let mut numerator = vec![0i64; 2 + alphas.iter().max().copied().unwrap_or(0)];
    numerator[0] = 1;
    numerator[1] += (p + q) as i64;
    for &a in &alphas {
        numerator[1 + a] -= 1;
    }
    numerator[1] -= alpha_zero as i64;
    let numerator = trim(numerator);
    Ok(ResolutionData {
        n,
        beta0,
        beta1: q,
        alphas,
        alpha_zero,
        p,
        s_dims: dims,
        regular_index: idx,
        kernel_present: false,
        hilbert_consistent: numerator == num,
        numerator,
    })
}

/// One hypothesis of a theorem check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<VerdictReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conclusion {
    pub statement: String,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub spread: usize,
    pub coefficients: Vec<i64>,
    pub numerator: Vec<i64>,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion: Conclusion,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub resolution: Vec<ResolutionData>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub fn hypothesis(&self, name: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.name == name)
    }
}

/// Parameters shared by the theorem checkers.
#[derive(Clone, Debug)]
pub struct CheckOptions<K: Field> {
    pub windows: Windows,
    pub nmax: usize,
    /// A minimal reduction; searched for when absent.
    pub reduction: Option<Ideal<K>>,
    /// Treat `red_{J^{[c]}}(I^c)` as already asymptotic (see [`a_invariant_sign`]).
    pub certified_from: Option<usize>,
    /// Powers at which to compute the resolution; by default the first two
    /// points of the stable reduction-number tail.
    pub resolution_powers: Option<Vec<u32>>,
    /// Window for the `I^{2n} ∩ J^{[n]}` condition.
    pub v2_window: std::ops::RangeInclusive<usize>,
    /// Skip the `I^{2n} ∩ J^{[n]}` condition and report it as not evaluated.
    pub skip_v2: bool,
}

impl<K: Field> Default for CheckOptions<K> {
    fn default() -> Self {
        CheckOptions {
            windows: Windows::default(),
            nmax: 12,
            reduction: None,
            certified_from: None,
            resolution_powers: None,
            v2_window: 1..=3,
            skip_v2: false,
        }
    }
}

fn reduction_for<K: Field>(i: &Ideal<K>, spread: usize, opts: &CheckOptions<K>) -> Result<Ideal<K>> {
    match &opts.reduction {
        Some(j) => Ok(j.clone()),
        None => Ok(find_minimal_reduction(i, spread, &opts.windows)?.j),
    }
}

fn sign_hypothesis(sign: Sign, red: Option<usize>, report: VerdictReport) -> Hypothesis {
    let status = match sign {
        Sign::Negative => Status::Holds,
        Sign::Nonnegative => Status::Fails,
        Sign::Inconclusive => Status::Inconclusive,
    };
    let detail = match red {
        Some(r) => format!("asymptotic reduction number {r}, sign {sign}"),
        None => format!("reduction numbers did not stabilize, sign {sign}"),
    };
    Hypothesis { name: "a(I) < 0".into(), status, detail, report: Some(report) }
}

fn grade_hypothesis<K: Field>(i: &Ideal<K>, target: usize, w: &Windows) -> Result<Hypothesis> {
    let g = grade_evidence(i, w)?;
    let status = match g.exact {
        Some(v) if v == target => Status::Holds,
        Some(_) => Status::Fails,
        None if g.lower >= target => Status::Holds,
        None => Status::Inconclusive,
    };
    let detail = match g.exact {
        Some(v) => format!("grade {v} ({})", g.method),
        None => format!("grade at least {} ({})", g.lower, g.method),
    };
    Ok(Hypothesis { name: format!("grade(I) = {target}"), status, detail, report: None })
}

fn fiber_data<K: Field>(i: &Ideal<K>, nmax: usize) -> Result<(HilbertData, Vec<i64>)> {
    let fh = fiber_hilbert(i, nmax)?;
    let coeffs = extract_coefficients(&fh)?.entries;
    Ok((fh, coeffs))
}

/// Spread two: `a(I) < 0` implies `f_1 ≤ f_0 - 1`, with equality when
/// `grade(I) = 2`; equality is diagnosed by the resolution of `F(I^n)`.
pub fn check_theorem_l2<K: Field>(i: &Ideal<K>, opts: &CheckOptions<K>) -> Result<TheoremReport> {
    let (fh, f) = fiber_data(i, opts.nmax)?;
    let spread = fh.form()?.denom_exp;
    if spread != 2 {
        return Err(Error::HypothesisViolation(format!("analytic spread is {spread}, not 2")));
    }
    let j = reduction_for(i, 2, opts)?;
    let (sign, red, sign_report) = a_invariant_sign(i, &j, 2, &opts.windows, opts.certified_from)?;
    let tail: Vec<u32> = stable_tail(&sign_report, red);
    let mut hypotheses = vec![sign_hypothesis(sign, red, sign_report), grade_hypothesis(i, 2, &opts.windows)?];
    let conclusion = Conclusion {
        statement: "f_1 <= f_0 - 1".into(),
        lhs: f[1],
        rhs: f[0] - 1,
        holds: f[1] <= f[0] - 1,
    };
    let mut notes = Vec::new();
    let numerator = fh.form()?.numerator.clone();
    if numerator.iter().any(|&h| h < 0) {
        notes.push("the fiber numerator has a negative coefficient, so F(I) is not Cohen-Macaulay".into());
    }
    let powers = opts.resolution_powers.clone().unwrap_or_else(|| tail.iter().take(2).cloned().collect());
    let mut resolution = Vec::new();
    for n in powers {
        match fiber_resolution(i, &j, n, opts.nmax) {
            Ok(r) => resolution.push(r),
            Err(e @ (Error::RegularityNotEstablished(_) | Error::HypothesisViolation(_))) => {
                notes.push(format!("resolution at n = {n} not computed: {e}"))
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(r) = resolution.last() {
        let cm = r.beta1 == 0;
        notes.push(format!(
            "F(I^{}) is {}Cohen-Macaulay (beta_1 = {}, sum of alphas = {})",
            r.n,
            if cm { "" } else { "not " },
            r.beta1,
            r.alpha_sum()
        ));
        hypotheses.push(Hypothesis {
            name: "y° regular on F(I^n)".into(),
            status: Status::Holds,
            detail: format!("injective through degree {}", r.s_dims.len() - 1),
            report: None,
        });
    }
    Ok(TheoremReport {
        theorem: "spread two fiber coefficient inequality".into(),
        spread,
        coefficients: f,
        numerator,
        hypotheses,
        conclusion,
        resolution,
        notes,
    })
}

/// Window points in the stable tail of the reduction-number sequence.
fn stable_tail(report: &VerdictReport, red: Option<usize>) -> Vec<u32> {
    let Some(r) = red else { return Vec::new() };
    let want = format!("red = {r}");
    let mut tail: Vec<u32> = report
        .evidence
        .iter()
        .rev()
        .take_while(|e| e.detail.as_deref() == Some(want.as_str()))
        .map(|e| e.point[0] as u32)
        .collect();
    tail.reverse();
    tail
}

/// Spread three: with `grade(I) = 3`, the condition `I^{2n} ∩ J^{[n]} = J^{[n]} I^n`
/// and `a(I) < 0`, `f_2 ≥ f_1 - f_0 + 1`.
pub fn check_theorem_l3<K: Field>(i: &Ideal<K>, opts: &CheckOptions<K>) -> Result<TheoremReport> {
    let (fh, f) = fiber_data(i, opts.nmax)?;
    let spread = fh.form()?.denom_exp;
    if spread != 3 {
        return Err(Error::HypothesisViolation(format!("analytic spread is {spread}, not 3")));
    }
    let j = reduction_for(i, 3, opts)?;
    let mut hypotheses = vec![grade_hypothesis(i, 3, &opts.windows)?];
    if opts.skip_v2 {
        hypotheses.push(Hypothesis {
            name: "I^2n ∩ J^[n] = J^[n] I^n".into(),
            status: Status::Inconclusive,
            detail: "not evaluated".into(),
            report: None,
        });
    } else {
        let v2 = v2_infinity(i, &j, opts.v2_window.clone())?;
        hypotheses.push(Hypothesis {
            name: "I^2n ∩ J^[n] = J^[n] I^n".into(),
            status: v2.status,
            detail: format!("tested for n in {:?}", opts.v2_window),
            report: Some(v2),
        });
    }
    let (sign, red, sign_report) = a_invariant_sign(i, &j, 3, &opts.windows, opts.certified_from)?;
    hypotheses.push(sign_hypothesis(sign, red, sign_report));
    let rhs = f[1] - f[0] + 1;
    let conclusion = Conclusion { statement: "f_2 >= f_1 - f_0 + 1".into(), lhs: f[2], rhs, holds: f[2] >= rhs };
    let mut notes = Vec::new();
    if !conclusion.holds {
        for (h, pattern) in hypotheses.iter().zip([
            "grade below the analytic spread",
            "the intersection condition on Frobenius powers fails",
            "nonnegative a-invariant",
        ]) {
            if h.status == Status::Fails {
                notes.push(format!("conclusion fails with hypothesis '{}' violated: {pattern}", h.name));
            }
        }
    }
    Ok(TheoremReport {
        theorem: "spread three fiber coefficient inequality".into(),
        spread,
        coefficients: f,
        numerator: fh.form()?.numerator.clone(),
        hypotheses,
        conclusion,
        resolution: Vec::new(),
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HigherSpreadReport {
    pub hypotheses: Vec<Hypothesis>,
    /// `(i, f_i(I), f_i(K))` for the indices where they must agree.
    pub coefficient_pairs: Vec<(usize, i64, i64)>,
    /// The quotient ring relations after adjoining the sequence.
    pub quotient: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e2: Option<i64>,
    pub delegated: TheoremReport,
}

/// Cuts `I` down by a regular Rees-superficial sequence `xs` to
/// `K = I/(xs)` in `A/(xs)`, compares fiber coefficients and runs the
/// spread-two or spread-three check on `K`.
pub fn check_higher_spread<K: Field>(
    i: &Ideal<K>,
    xs: &[Polynomial<K>],
    opts: &CheckOptions<K>,
) -> Result<HigherSpreadReport> {
    let ring = i.ring();
    let mut hypotheses = Vec::new();
    let regular = is_regular_sequence(ring, xs)?;
    hypotheses.push(Hypothesis {
        name: "regular sequence".into(),
        status: if regular { Status::Holds } else { Status::Fails },
        detail: format!("{} elements", xs.len()),
        report: None,
    });
    let mut current = i.clone();
    for x in xs {
        let rep = is_rees_superficial(x, &current, 1, &opts.windows)?;
        hypotheses.push(Hypothesis {
            name: format!("Rees-superficial {}", x.render(ring.names())),
            status: rep.status,
            detail: format!("{} window points", rep.evidence.len()),
            report: Some(rep),
        });
        let next_ring = current.ring().with_relations(vec![x.clone()])?;
        current = Ideal::new(&next_ring, current.gens().to_vec())?;
    }
    if hypotheses.iter().any(|h| h.status != Status::Holds) {
        return Err(Error::HypothesisViolation(
            "the sequence is not a regular Rees-superficial sequence on the tested windows".into(),
        ));
    }
    let k = current;
    let (fi, f_i) = fiber_data(i, opts.nmax)?;
    let (_, f_k) = fiber_data(&k, opts.nmax)?;
    let l = fi.form()?.denom_exp;
    let r = xs.len();
    let coefficient_pairs: Vec<(usize, i64, i64)> =
        (0..l.saturating_sub(r)).map(|t| (t, f_i[t], *f_k.get(t).unwrap_or(&0))).collect();
    if coefficient_pairs.iter().any(|(_, a, b)| a != b) {
        return Err(Error::InternalInconsistency(format!(
            "fiber coefficients of I and K differ: {coefficient_pairs:?}"
        )));
    }
    let e2 = if is_m_primary(i)? && ring.nvars() >= 2 {
        let hs = hilbert_samuel(i, opts.nmax)?;
        extract_coefficients(&hs)?.entries.get(2).copied()
    } else {
        None
    };
    let sub = CheckOptions { reduction: None, ..opts.clone() };
    let delegated = match l - r {
        2 => check_theorem_l2(&k, &sub)?,
        3 => check_theorem_l3(&k, &sub)?,
        s => return Err(Error::HypothesisViolation(format!("the cut-down ideal has spread {s}; expected 2 or 3"))),
    };
    Ok(HigherSpreadReport { hypotheses, coefficient_pairs, quotient: k.ring().render(), e2, delegated })
}
