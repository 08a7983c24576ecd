//! The value group: rational numbers together with a single `+inf` element.
//!
//! Every valuation in this crate takes values in ℚ ∪ {+∞}, with `+inf`
//! reserved for the zero polynomial. Comparisons are exact; there is no
//! floating point anywhere.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A rational value or `+inf`. Ordered totally, with `+inf` strictly
/// greater than every rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Finite(BigRational),
    Infinite,
}

impl Value {
    pub fn zero() -> Self {
        Value::Finite(BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Value::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    /// Reduced rational `num/den`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "value denominator must be nonzero");
        Value::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_ratio(r: BigRational) -> Self {
        Value::Finite(r)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Value::Infinite)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn as_ratio(&self) -> Option<&BigRational> {
        match self {
            Value::Finite(r) => Some(r),
            Value::Infinite => None,
        }
    }

    fn expect_finite(&self, what: &str) -> &BigRational {
        match self {
            Value::Finite(r) => r,
            Value::Infinite => panic!("{what} is undefined on infinite values"),
        }
    }

    /// Difference of two finite values. Panics on `+inf` operands: the
    /// value group only supports subtraction on rationals.
    pub fn sub(&self, rhs: &Value) -> Value {
        let a = self.expect_finite("subtraction");
        let b = rhs.expect_finite("subtraction");
        Value::Finite(a - b)
    }

    /// `k * self` for a non-negative integer scalar (used for the term
    /// values `j * gamma`). Panics on `+inf`.
    pub fn scaled(&self, k: usize) -> Value {
        let r = self.expect_finite("integer scaling");
        Value::Finite(r * BigRational::from_integer(BigInt::from(k)))
    }

    /// `self / b` for a strictly positive integer. Panics on `+inf`.
    pub fn div_int(&self, b: u32) -> Value {
        assert!(b > 0, "division by zero integer");
        let r = self.expect_finite("integer division");
        Value::Finite(r / BigRational::from_integer(BigInt::from(b)))
    }

    /// Parse `"a/b"`, `"a"` or `"inf"`.
    pub fn parse(text: &str) -> Result<Value> {
        let text = text.trim();
        if text == "inf" {
            return Ok(Value::Infinite);
        }
        let mk_err = || Error::Syntax {
            position: 0,
            message: format!("invalid value literal '{text}'"),
        };
        match text.split_once('/') {
            Some((n, d)) => {
                let num: BigInt = n.trim().parse().map_err(|_| mk_err())?;
                let den: BigInt = d.trim().parse().map_err(|_| mk_err())?;
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Value::Finite(BigRational::new(num, den)))
            }
            None => {
                let num: BigInt = text.parse().map_err(|_| mk_err())?;
                Ok(Value::Finite(BigRational::from_integer(num)))
            }
        }
    }
}

impl Add for &Value {
    type Output = Value;

    fn add(self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a + b),
            _ => Value::Infinite,
        }
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Infinite, Value::Infinite) => Ordering::Equal,
            (Value::Infinite, Value::Finite(_)) => Ordering::Greater,
            (Value::Finite(_), Value::Infinite) => Ordering::Less,
            (Value::Finite(a), Value::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(r) => write!(f, "{r}"),
            Value::Infinite => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_is_greatest() {
        assert!(Value::Infinite > Value::from_int(1_000_000));
        assert!(Value::new(-1, 2) < Value::zero());
        assert_eq!(Value::Infinite, Value::Infinite);
    }

    #[test]
    fn addition_absorbs_infinity() {
        let v = &Value::from_int(3) + &Value::Infinite;
        assert!(v.is_infinite());
        assert_eq!(&Value::new(1, 2) + &Value::new(1, 3), Value::new(5, 6));
    }

    #[test]
    fn canonical_form_reduces() {
        assert_eq!(Value::new(2, 4), Value::new(1, 2));
        assert_eq!(Value::new(1, -2), Value::new(-1, 2));
        assert_eq!(Value::new(-3, 1).to_string(), "-3");
        assert_eq!(Value::new(3, 2).to_string(), "3/2");
        assert_eq!(Value::Infinite.to_string(), "inf");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-7", "3/2", "-11/4", "inf"] {
            assert_eq!(Value::parse(s).unwrap().to_string(), s);
        }
        assert!(Value::parse("1/0").is_err());
        assert!(Value::parse("x").is_err());
    }

    #[test]
    fn addition_is_monotone() {
        let u = Value::new(1, 3);
        let v = Value::new(1, 2);
        let w = Value::new(-5, 7);
        assert!(&u + &w <= &v + &w);
        assert!(&u + &Value::Infinite <= &v + &Value::Infinite);
    }
}
