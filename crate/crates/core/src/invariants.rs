//! Hilbert functions and series of fiber cones and associated graded rings,
//! Hilbert–Samuel functions, and their coefficients.

use num_integer::binomial;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::Field;
use crate::groebner::Ideal;
use crate::localring::{colength, is_m_primary, min_gens, Length};

/// Which graded object a table of values describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    /// `n -> μ(I^n)`.
    Fiber,
    /// `n -> ℓ(I^n / I^{n+1})`.
    Associated,
    /// `n -> ℓ(A / I^{n+1})`.
    HilbertSamuel,
}

/// `h(z) / (1 - z)^ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalForm {
    pub numerator: Vec<i64>,
    pub denom_exp: usize,
}

impl RationalForm {
    /// Coefficient of `z^n` in the expansion.
    pub fn coefficient(&self, n: usize) -> i128 {
        let l = self.denom_exp;
        self.numerator
            .iter()
            .enumerate()
            .filter(|(k, _)| *k <= n)
            .map(|(k, &h)| {
                let m = n - k;
                // coefficient of z^m in (1-z)^{-l} is C(m + l - 1, l - 1)
                let c = if l == 0 { (m == 0) as i128 } else { binomial((m + l - 1) as i128, (l - 1) as i128) };
                h as i128 * c
            })
            .sum()
    }

    /// `h(1)`.
    pub fn multiplicity(&self) -> i64 {
        self.numerator.iter().sum()
    }

    /// `h^{(i)}(1) / i!` for `i < ℓ`: the coefficients of the eventual
    /// polynomial in the basis `(-1)^i C(n + ℓ - 1 - i, ℓ - 1 - i)`.
    pub fn coefficients(&self) -> Vec<i64> {
        (0..self.denom_exp)
            .map(|i| {
                self.numerator
                    .iter()
                    .enumerate()
                    .map(|(k, &h)| if k >= i { h * binomial(k as i64, i as i64) } else { 0 })
                    .sum()
            })
            .collect()
    }

    /// Value at `n` of the polynomial with the given binomial-basis coefficients.
    pub fn polynomial_value(coeffs: &[i64], n: usize) -> i128 {
        let l = coeffs.len();
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &f)| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let top = (n + l - 1 - i) as i128;
                sign * f as i128 * binomial(top, (l - 1 - i) as i128)
            })
            .sum()
    }
}

/// A finite table of a Hilbert-type function with the rational form inferred from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    pub kind: SeriesKind,
    pub values: Vec<i64>,
    pub rational_form: Option<RationalForm>,
    /// First `n` from which the values agree with the eventual polynomial.
    pub stabilization: Option<usize>,
}

/// Minimum number of trailing vanishing numerator coefficients required.
pub const MIN_VANISHING: usize = 3;

impl HilbertData {
    /// Infers `h(z)/(1-z)^ℓ` from the table: `ℓ` is the least exponent for
    /// which the truncated numerator `(1-z)^ℓ Σ v_n z^n` vanishes on at least
    /// three trailing tabulated degrees.
    pub fn from_values(kind: SeriesKind, values: Vec<i64>) -> Self {
        let (rational_form, stabilization) = match infer(&values) {
            Some((form, n0)) => (Some(form), Some(n0)),
            None => (None, None),
        };
        HilbertData { kind, values, rational_form, stabilization }
    }

    pub fn nmax(&self) -> usize {
        self.values.len() - 1
    }

    pub fn form(&self) -> Result<&RationalForm> {
        self.rational_form.as_ref().ok_or(Error::MissingRationalForm)
    }

    fn require_form(self) -> Result<Self> {
        if self.rational_form.is_none() {
            return Err(Error::NoStabilization { nmax: self.nmax() });
        }
        Ok(self)
    }
}

fn infer(values: &[i64]) -> Option<(RationalForm, usize)> {
    let nmax = values.len().checked_sub(1)?;
    let mut h: Vec<i128> = values.iter().map(|&v| v as i128).collect();
    for l in 0..=nmax {
        if l > 0 {
            // multiply the truncated series by (1 - z)
            for k in (1..h.len()).rev() {
                h[k] -= h[k - 1];
            }
        }
        let degree = h.iter().rposition(|&c| c != 0)?;
        if nmax - degree < MIN_VANISHING {
            continue;
        }
        let numerator: Vec<i64> = h[..=degree].iter().map(|&c| i64::try_from(c).ok()).collect::<Option<_>>()?;
        let form = RationalForm { numerator, denom_exp: l };
        if form.multiplicity() == 0 {
            continue;
        }
        let n0 = (degree + 1).saturating_sub(l);
        let coeffs = form.coefficients();
        let matches = (n0..=nmax).all(|n| RationalForm::polynomial_value(&coeffs, n) == values[n] as i128);
        debug_assert!(matches, "eventual polynomial disagrees with the table");
        if !matches {
            return None;
        }
        return Some((form, n0));
    }
    None
}

/// Kind-tagged coefficient vector: `f_0..f_{ℓ-1}` or `e_0..e_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientVector {
    pub kind: SeriesKind,
    pub entries: Vec<i64>,
}

/// Coefficients of the eventual polynomial in the binomial basis.
///
/// For a fiber or associated graded series these are `f_i` (respectively
/// `e_i`) with `f_i = h^{(i)}(1)/i!`; the Hilbert–Samuel table has one more
/// power of `1-z` in the denominator and the same formula yields `e_0..e_d`.
pub fn extract_coefficients(h: &HilbertData) -> Result<CoefficientVector> {
    let form = h.form()?;
    Ok(CoefficientVector { kind: h.kind, entries: form.coefficients() })
}

/// `n -> μ(I^n)` for `n = 0..=nmax`.
pub fn fiber_values<K: Field>(i: &Ideal<K>, nmax: usize) -> Result<Vec<i64>> {
    let mut values = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let v = if n == 0 { 1 } else { min_gens(&i.power(n as u32)?)? };
        values.push(v as i64);
    }
    Ok(values)
}

/// Hilbert series of the fiber cone `F(I) = ⊕ I^n/mI^n`.
pub fn fiber_hilbert<K: Field>(i: &Ideal<K>, nmax: usize) -> Result<HilbertData> {
    HilbertData::from_values(SeriesKind::Fiber, fiber_values(i, nmax)?).require_form()
}

fn colengths<K: Field>(i: &Ideal<K>, nmax: usize) -> Result<Vec<i64>> {
    if !is_m_primary(i)? {
        return Err(Error::NotPrimary(i.render()));
    }
    let mut out = Vec::with_capacity(nmax + 2);
    for n in 0..=nmax + 1 {
        match colength(&i.power(n as u32)?)? {
            Length::Finite(v) => out.push(v as i64),
            Length::Infinite => return Err(Error::NotPrimary(i.render())),
        }
    }
    Ok(out)
}

/// Hilbert series of `G(I) = ⊕ I^n/I^{n+1}`.
pub fn assoc_hilbert<K: Field>(i: &Ideal<K>, nmax: usize) -> Result<HilbertData> {
    let c = colengths(i, nmax)?;
    let values = (0..=nmax).map(|n| c[n + 1] - c[n]).collect();
    HilbertData::from_values(SeriesKind::Associated, values).require_form()
}

/// The Hilbert–Samuel function `n -> ℓ(A/I^{n+1})`.
pub fn hilbert_samuel<K: Field>(i: &Ideal<K>, nmax: usize) -> Result<HilbertData> {
    let c = colengths(i, nmax)?;
    HilbertData::from_values(SeriesKind::HilbertSamuel, c[1..].to_vec()).require_form()
}

/// The analytic spread: the denominator exponent of the fiber series.
pub fn analytic_spread<K: Field>(i: &Ideal<K>, nmax: usize) -> Result<usize> {
    Ok(fiber_hilbert(i, nmax)?.form()?.denom_exp)
}

/// The series of the `n`-th Veronese subring: values `j -> H(nj)`.
pub fn veronese(h: &HilbertData, n: usize) -> Result<HilbertData> {
    if n == 0 {
        return Err(Error::Structural("veronese degree must be positive".into()));
    }
    let values: Vec<i64> = h.values.iter().step_by(n).cloned().collect();
    if values.len() < MIN_VANISHING + 2 {
        return Err(Error::InsufficientDepth { needed: n * (MIN_VANISHING + 1), have: h.nmax() });
    }
    HilbertData::from_values(h.kind, values).require_form()
}
