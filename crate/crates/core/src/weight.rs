//! Probability weights that are either exact rationals or floats.
//!
//! Arithmetic between two exact weights stays exact; anything touching a
//! float becomes a float.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum Weight {
    Exact(BigRational),
    Float(f64),
}

impl Weight {
    pub fn zero() -> Self {
        Weight::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Weight::Exact(BigRational::one())
    }

    /// `num/den` as an exact rational. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Weight::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Weight::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Weight::Exact(r) => r.is_zero(),
            Weight::Float(x) => *x == 0.0,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Weight::Exact(r) => r.is_positive(),
            Weight::Float(x) => *x > 0.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Weight::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Weight::Float(x) => *x,
        }
    }

    pub fn abs(&self) -> Weight {
        match self {
            Weight::Exact(r) => Weight::Exact(r.abs()),
            Weight::Float(x) => Weight::Float(x.abs()),
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Weight::Exact(r) => Some(r),
            Weight::Float(_) => None,
        }
    }

    /// Equal to `other` exactly when both are exact, else within `tol`.
    pub fn approx_eq(&self, other: &Weight, tol: f64) -> bool {
        match (self, other) {
            (Weight::Exact(a), Weight::Exact(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() <= tol,
        }
    }

    /// JSON value: exact weights as `"p/q"` text, floats as numbers.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Weight::Exact(_) => serde_json::Value::String(self.to_string()),
            Weight::Float(x) => serde_json::json!(x),
        }
    }

    /// Reads `"p/q"`, `"p"`, a decimal string, or a JSON number.
    pub fn from_json(v: &serde_json::Value) -> Result<Weight> {
        match v {
            serde_json::Value::String(s) => s.parse(),
            serde_json::Value::Number(n) => n
                .as_f64()
                .map(Weight::Float)
                .ok_or_else(|| Error::Parse(format!("weight {n} is not representable"))),
            other => Err(Error::Parse(format!("weight must be a string or number, got {other}"))),
        }
    }

    fn binop(
        &self,
        other: &Weight,
        exact: impl Fn(&BigRational, &BigRational) -> BigRational,
        float: impl Fn(f64, f64) -> f64,
    ) -> Weight {
        match (self, other) {
            (Weight::Exact(a), Weight::Exact(b)) => Weight::Exact(exact(a, b)),
            _ => Weight::Float(float(self.to_f64(), other.to_f64())),
        }
    }
}

impl Default for Weight {
    fn default() -> Self {
        Weight::zero()
    }
}

impl From<f64> for Weight {
    fn from(x: f64) -> Self {
        Weight::Float(x)
    }
}

impl From<BigRational> for Weight {
    fn from(r: BigRational) -> Self {
        Weight::Exact(r)
    }
}

impl PartialEq for Weight {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Weight::Exact(a), Weight::Exact(b)) => Some(a.cmp(b)),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

impl<'a> Add<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.binop(rhs, |a, b| a + b, |a, b| a + b)
    }
}

impl<'a> Sub<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.binop(rhs, |a, b| a - b, |a, b| a - b)
    }
}

impl<'a> Mul<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        self.binop(rhs, |a, b| a * b, |a, b| a * b)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Mul for Weight {
    type Output = Weight;
    fn mul(self, rhs: Weight) -> Weight {
        &self * &rhs
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::zero(), |acc, w| acc + w)
    }
}

impl<'a> Sum<&'a Weight> for Weight {
    fn sum<I: Iterator<Item = &'a Weight>>(iter: I) -> Weight {
        iter.fold(Weight::zero(), |acc, w| &acc + w)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Exact(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Weight::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Weight::Float(x) => write!(f, "{x}"),
        }
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Weight> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot parse weight {s:?}"));
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            return Ok(Weight::Exact(BigRational::new(p, q)));
        }
        if let Ok(p) = s.parse::<BigInt>() {
            return Ok(Weight::Exact(BigRational::from_integer(p)));
        }
        s.parse::<f64>().map(Weight::Float).map_err(|_| bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_stays_exact() {
        let a = Weight::ratio(1, 3);
        let b = Weight::ratio(1, 6);
        assert_eq!((&a + &b).to_string(), "1/2");
        assert!((&a * &b).is_exact());
        assert_eq!((&a - &a).to_string(), "0");
    }

    #[test]
    fn float_contaminates() {
        let s = &Weight::ratio(1, 2) + &Weight::Float(0.25);
        assert!(!s.is_exact());
        assert_eq!(s.to_f64(), 0.75);
    }

    #[test]
    fn parse_forms() {
        assert_eq!("3/7".parse::<Weight>().unwrap(), Weight::ratio(3, 7));
        assert_eq!("6/14".parse::<Weight>().unwrap().to_string(), "3/7");
        assert_eq!("1".parse::<Weight>().unwrap(), Weight::one());
        assert!(!"0.5".parse::<Weight>().unwrap().is_exact());
        assert!("1/0".parse::<Weight>().is_err());
        assert!("abc".parse::<Weight>().is_err());
    }

    #[test]
    fn json_forms() {
        let w = Weight::from_json(&serde_json::json!("2/5")).unwrap();
        assert_eq!(w.to_json(), serde_json::json!("2/5"));
        let f = Weight::from_json(&serde_json::json!(0.4)).unwrap();
        assert_eq!(f.to_json(), serde_json::json!(0.4));
        assert!(Weight::from_json(&serde_json::json!(null)).is_err());
    }
}
