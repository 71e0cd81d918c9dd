//! Coefficient fields: the rationals and a prime field.
//!
//! Every algebraic structure in the crate is generic over [`Field`]. Values
//! are always exact; there is no rounding anywhere.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact coefficient field.
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Short name used in reports (`QQ`, `GF(32003)`).
    fn name() -> String;
    /// Field characteristic, `0` for the rationals.
    const CHARACTERISTIC: u32;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero; callers check first.
    fn inv(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    /// Maps a rational number into the field; fails if the denominator
    /// vanishes in the field.
    fn from_rational(r: &BigRational) -> Result<Self>;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// True when the printed form needs parentheses as a coefficient.
    fn is_negative(&self) -> bool {
        false
    }

    /// Rank of a sparse matrix given as rows of `(column, value)` pairs.
    ///
    /// The default is plain Gaussian elimination; implementations may
    /// override it with something better suited to their arithmetic.
    fn sparse_rank(rows: Vec<Vec<(usize, Self)>>) -> usize {
        crate::linalg::gauss_rank(rows)
    }
}

/// Arbitrary-precision rational number in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Rational {
    fn name() -> String {
        "QQ".to_string()
    }
    const CHARACTERISTIC: u32 = 0;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Rational(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Rational(self.0.recip())
    }
    fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }
    fn from_rational(r: &BigRational) -> Result<Self> {
        Ok(Rational(r.clone()))
    }
    fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    fn sparse_rank(rows: Vec<Vec<(usize, Self)>>) -> usize {
        crate::linalg::rational_rank(rows)
    }
}

/// Residues modulo the prime `P`, stored in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Zp<const P: u32>(u32);

/// The prime field used by the speed mode.
pub type Fp32003 = Zp<32003>;

impl<const P: u32> Zp<P> {
    pub fn new(v: i64) -> Self {
        Zp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P as u64;
            }
            base = base * base % P as u64;
            e >>= 1;
        }
        Zp(acc as u32)
    }
}

impl<const P: u32> fmt::Debug for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Field for Zp<P> {
    fn name() -> String {
        format!("GF({P})")
    }
    const CHARACTERISTIC: u32 = P;

    fn zero() -> Self {
        Zp(0)
    }
    fn one() -> Self {
        Zp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
    fn add(&self, other: &Self) -> Self {
        let s = self.0 + other.0;
        Zp(if s >= P { s - P } else { s })
    }
    fn sub(&self, other: &Self) -> Self {
        Zp(if self.0 >= other.0 { self.0 - other.0 } else { self.0 + P - other.0 })
    }
    fn mul(&self, other: &Self) -> Self {
        Zp(((self.0 as u64 * other.0 as u64) % P as u64) as u32)
    }
    fn neg(&self) -> Self {
        Zp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P as u64 - 2)
    }
    fn from_i64(v: i64) -> Self {
        Zp::new(v)
    }
    fn from_rational(r: &BigRational) -> Result<Self> {
        let p = BigInt::from(P);
        let num = r.numer().mod_floor(&p).to_i64().unwrap_or(0);
        let den = r.denom().mod_floor(&p).to_i64().unwrap_or(0);
        if den == 0 {
            return Err(Error::Structural(format!(
                "coefficient {r} has a denominator divisible by {P}"
            )));
        }
        Ok(Zp::new(num).div(&Zp::new(den)))
    }
}
