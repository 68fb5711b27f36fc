//! Scalars for sparse vectors: exact rationals and `f64`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed as _, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s.trim() {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

/// Relative tolerance used by float mode wherever exact mode tests equality.
pub const FLOAT_TOL: f64 = 1e-12;

pub trait Scalar: Clone + fmt::Debug + PartialEq + PartialOrd + Send + Sync + 'static {
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Exact conversion; `None` for non-finite input.
    fn from_f64(v: f64) -> Option<Self>;
    fn to_f64(&self) -> f64;

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Panics on division by zero.
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn abs(&self) -> Self;

    /// `p/q` in exact mode, 17 significant digits in float mode.
    fn to_text(&self) -> String;
    fn parse_text(s: &str) -> Result<Self>;

    /// Equality up to the mode's tolerance, relative to `scale`.
    fn approx_eq(&self, rhs: &Self, scale: &Self) -> bool;

    fn add_assign(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }

    fn max_of(self, rhs: Self) -> Self {
        if rhs > self {
            rhs
        } else {
            self
        }
    }

    fn min_of(self, rhs: Self) -> Self {
        if rhs < self {
            rhs
        } else {
            self
        }
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn zero() -> f64 {
        0.0
    }
    fn one() -> f64 {
        1.0
    }
    fn from_i64(v: i64) -> f64 {
        v as f64
    }
    fn from_ratio(num: i64, den: i64) -> f64 {
        num as f64 / den as f64
    }
    fn from_f64(v: f64) -> Option<f64> {
        v.is_finite().then_some(v)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, rhs: &f64) -> f64 {
        self + rhs
    }
    fn sub(&self, rhs: &f64) -> f64 {
        self - rhs
    }
    fn mul(&self, rhs: &f64) -> f64 {
        self * rhs
    }
    fn div(&self, rhs: &f64) -> f64 {
        assert!(*rhs != 0.0, "division by zero");
        self / rhs
    }
    fn neg(&self) -> f64 {
        -self
    }
    fn abs(&self) -> f64 {
        f64::abs(*self)
    }
    fn to_text(&self) -> String {
        format!("{:.16e}", self)
    }
    fn parse_text(s: &str) -> Result<f64> {
        s.trim().parse::<f64>().map_err(|e| Error::Parse(format!("{s:?}: {e}")))
    }
    fn approx_eq(&self, rhs: &f64, scale: &f64) -> bool {
        f64::abs(self - rhs) <= FLOAT_TOL * f64::abs(*scale).max(1.0)
    }
}

/// An exact rational with an `i64` fast path. A `Frac` never holds a value
/// representable as `Int`, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Int(i64),
    Frac(Box<BigRational>),
}

impl Rational {
    pub fn from_big(r: BigRational) -> Rational {
        if r.denom().is_one() {
            if let Some(v) = r.numer().to_i64() {
                return Rational::Int(v);
            }
        }
        Rational::Frac(Box::new(r))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Int(v) => BigRational::from_integer(BigInt::from(*v)),
            Rational::Frac(r) => (**r).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Int(v) => BigInt::from(*v),
            Rational::Frac(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Int(_) => BigInt::one(),
            Rational::Frac(r) => r.denom().clone(),
        }
    }

    fn big_op(&self, rhs: &Rational, f: impl Fn(BigRational, BigRational) -> BigRational) -> Rational {
        Rational::from_big(f(self.to_big(), rhs.to_big()))
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Int(v) => write!(f, "{v}"),
            Rational::Frac(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Int(a), Rational::Int(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn zero() -> Rational {
        Rational::Int(0)
    }
    fn one() -> Rational {
        Rational::Int(1)
    }
    fn from_i64(v: i64) -> Rational {
        Rational::Int(v)
    }
    fn from_ratio(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        Rational::from_big(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
    fn from_f64(v: f64) -> Option<Rational> {
        BigRational::from_float(v).map(Rational::from_big)
    }
    fn to_f64(&self) -> f64 {
        match self {
            Rational::Int(v) => *v as f64,
            Rational::Frac(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }
    fn is_zero(&self) -> bool {
        matches!(self, Rational::Int(0))
    }
    fn add(&self, rhs: &Rational) -> Rational {
        if let (Rational::Int(a), Rational::Int(b)) = (self, rhs) {
            if let Some(v) = a.checked_add(*b) {
                return Rational::Int(v);
            }
        }
        self.big_op(rhs, |a, b| a + b)
    }
    fn sub(&self, rhs: &Rational) -> Rational {
        if let (Rational::Int(a), Rational::Int(b)) = (self, rhs) {
            if let Some(v) = a.checked_sub(*b) {
                return Rational::Int(v);
            }
        }
        self.big_op(rhs, |a, b| a - b)
    }
    fn mul(&self, rhs: &Rational) -> Rational {
        if let (Rational::Int(a), Rational::Int(b)) = (self, rhs) {
            if let Some(v) = a.checked_mul(*b) {
                return Rational::Int(v);
            }
        }
        self.big_op(rhs, |a, b| a * b)
    }
    fn div(&self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        if let (Rational::Int(a), Rational::Int(b)) = (self, rhs) {
            if let Some(0) = a.checked_rem(*b) {
                if let Some(v) = a.checked_div(*b) {
                    return Rational::Int(v);
                }
            }
        }
        self.big_op(rhs, |a, b| a / b)
    }
    fn neg(&self) -> Rational {
        match self {
            Rational::Int(v) => match v.checked_neg() {
                Some(n) => Rational::Int(n),
                None => Rational::from_big(-self.to_big()),
            },
            Rational::Frac(r) => Rational::from_big(-(**r).clone()),
        }
    }
    fn abs(&self) -> Rational {
        match self {
            Rational::Int(v) => match v.checked_abs() {
                Some(n) => Rational::Int(n),
                None => Rational::from_big(self.to_big().abs()),
            },
            Rational::Frac(r) => Rational::from_big(r.abs()),
        }
    }
    fn to_text(&self) -> String {
        match self {
            Rational::Int(v) => format!("{v}/1"),
            Rational::Frac(r) => format!("{}/{}", r.numer(), r.denom()),
        }
    }
    fn parse_text(s: &str) -> Result<Rational> {
        let s = s.trim();
        let bad = |e: &dyn fmt::Display| Error::Parse(format!("{s:?}: {e}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|e| bad(&e))?;
        let d: BigInt = d.parse().map_err(|e| bad(&e))?;
        if d.is_zero() {
            return Err(bad(&"zero denominator"));
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
    fn approx_eq(&self, rhs: &Rational, _scale: &Rational) -> bool {
        self == rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_path_overflows_into_big() {
        let m = Rational::from_i64(i64::MAX);
        let s = m.add(&Rational::one());
        assert!(matches!(s, Rational::Frac(_)));
        assert_eq!(s.sub(&Rational::one()), m);
        assert_eq!(Rational::from_i64(i64::MIN).neg().neg(), Rational::from_i64(i64::MIN));
    }

    #[test]
    fn division_normalizes() {
        let q = Rational::from_i64(6).div(&Rational::from_i64(4));
        assert_eq!(q.to_text(), "3/2");
        assert_eq!(q.mul(&Rational::from_i64(2)), Rational::from_i64(3));
        assert!(matches!(q.mul(&Rational::from_i64(2)), Rational::Int(3)));
    }

    #[test]
    fn text_round_trip() {
        for s in ["0/1", "-7/3", "5/1"] {
            assert_eq!(Rational::parse_text(s).unwrap().to_text(), s);
        }
        let x = 0.1f64;
        assert_eq!(f64::parse_text(&x.to_text()).unwrap(), x);
        assert_eq!(Rational::from_f64(0.5).unwrap(), Rational::from_ratio(1, 2));
    }

    #[test]
    fn ordering_mixes_variants() {
        let half = Rational::from_ratio(1, 2);
        assert!(half < Rational::one());
        assert!(Rational::zero() < half);
        assert!(half.neg() < Rational::zero());
    }
}
