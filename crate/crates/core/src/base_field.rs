//! Concrete valued base fields: (ℚ, v_p) and (F_p(t), v_t).
//!
//! Elements are kept in canonical reduced form so that equality is
//! structural. All arithmetic is exact.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::value::Value;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverse of zero mod p");
    pow_mod(a, p - 2, p)
}

/// A dense polynomial over the prime field F_p in the variable `t`.
/// Coefficients are residues in `0..p`; no trailing zeros; the empty
/// coefficient vector is the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        FpPoly::new(p, vec![c])
    }

    pub fn one(p: u64) -> Self {
        FpPoly::constant(p, 1)
    }

    /// The monomial `t`.
    pub fn t(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Order of vanishing at t = 0 (index of the first nonzero
    /// coefficient); `None` for the zero polynomial.
    pub fn t_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    fn lead(&self) -> u64 {
        *self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn add(&self, rhs: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, rhs.p);
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = rhs.coeffs.get(i).copied().unwrap_or(0);
            *o = (a + b) % p;
        }
        FpPoly::new(p, out)
    }

    pub fn neg(&self) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.coeffs.iter().map(|&c| (p - c) % p).collect())
    }

    pub fn sub(&self, rhs: &FpPoly) -> FpPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, rhs.p);
        let p = self.p as u128;
        if self.is_zero() || rhs.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let acc = (out[i + j] as u128 + a as u128 * b as u128) % p;
                out[i + j] = acc as u64;
            }
        }
        FpPoly::new(self.p, out)
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        let p = self.p;
        let c = c % p;
        FpPoly::new(p, self.coeffs.iter().map(|&a| ((a as u128 * c as u128) % p as u128) as u64).collect())
    }

    /// Division with remainder by a nonzero divisor.
    pub fn divrem(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial over F_p");
        let p = self.p;
        let dd = divisor.degree().unwrap();
        let lead_inv = inv_mod(divisor.lead(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let q = ((c as u128 * lead_inv as u128) % p as u128) as u64;
            quot[i - dd] = q;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let sub = (q as u128 * dc as u128) % p as u128;
                let idx = i - dd + j;
                rem[idx] = ((rem[idx] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
        (FpPoly::new(p, quot), FpPoly::new(p, rem))
    }

    pub fn gcd(&self, rhs: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lead(), self.p))
    }

    fn fmt_with_var(&self, f: &mut fmt::Formatter<'_>, var: char) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (c, k) {
                (_, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "{var}")?,
                (1, _) => write!(f, "{var}^{k}")?,
                (_, 1) => write!(f, "{c}*{var}")?,
                (_, _) => write!(f, "{c}*{var}^{k}")?,
            }
        }
        Ok(())
    }
}

/// A reduced ratio of two `t`-polynomials over F_p: gcd(num, den) = 1 and
/// the denominator is monic. The zero element is 0/1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: FpPoly,
    den: FpPoly,
}

impl RatFunc {
    pub fn new(num: FpPoly, den: FpPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: FpPoly, den: FpPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            let p = num.p;
            return RatFunc { num, den: FpPoly::one(p) };
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g);
        let (den, _) = den.divrem(&g);
        let lead_inv = inv_mod(den.lead(), den.p);
        RatFunc { num: num.scale(lead_inv), den: den.scale(lead_inv) }
    }

    pub fn num(&self) -> &FpPoly {
        &self.num
    }

    pub fn den(&self) -> &FpPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

/// An element of the base field. The variant must match the field
/// descriptor; mixing variants in arithmetic is a programming error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldElem {
    Rational(BigRational),
    RatFunc(RatFunc),
}

impl FieldElem {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(r) => r.is_zero(),
            FieldElem::RatFunc(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(r) => r.is_one(),
            FieldElem::RatFunc(r) => r.is_one(),
        }
    }

    pub fn add(&self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a + b),
            (FieldElem::RatFunc(a), FieldElem::RatFunc(b)) => {
                let num = a.num.mul(&b.den).add(&b.num.mul(&a.den));
                let den = a.den.mul(&b.den);
                FieldElem::RatFunc(RatFunc::reduced(num, den))
            }
            _ => panic!("mixed base fields in element arithmetic"),
        }
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(-a),
            FieldElem::RatFunc(a) => FieldElem::RatFunc(RatFunc { num: a.num.neg(), den: a.den.clone() }),
        }
    }

    pub fn sub(&self, rhs: &FieldElem) -> FieldElem {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a * b),
            (FieldElem::RatFunc(a), FieldElem::RatFunc(b)) => {
                let num = a.num.mul(&b.num);
                let den = a.den.mul(&b.den);
                FieldElem::RatFunc(RatFunc::reduced(num, den))
            }
            _ => panic!("mixed base fields in element arithmetic"),
        }
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElem::Rational(a) => FieldElem::Rational(a.recip()),
            FieldElem::RatFunc(a) => FieldElem::RatFunc(RatFunc::reduced(a.den.clone(), a.num.clone())),
        })
    }

    pub fn div(&self, rhs: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(&rhs.inv()?))
    }
}

/// Descriptor of a concrete valued base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseField {
    /// ℚ with the p-adic valuation v_p.
    PadicRationals { p: u64 },
    /// F_p(t) with the t-adic valuation v_t.
    RationalFunctions { p: u64, var: char },
}

impl BaseField {
    pub fn padic(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(BaseField::PadicRationals { p })
    }

    pub fn rational_functions(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(BaseField::RationalFunctions { p, var: 't' })
    }

    pub fn prime(&self) -> u64 {
        match self {
            BaseField::PadicRationals { p } => *p,
            BaseField::RationalFunctions { p, .. } => *p,
        }
    }

    /// 0 for ℚ, p for F_p(t).
    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::PadicRationals { .. } => 0,
            BaseField::RationalFunctions { p, .. } => *p,
        }
    }

    pub fn var(&self) -> Option<char> {
        match self {
            BaseField::PadicRationals { .. } => None,
            BaseField::RationalFunctions { var, .. } => Some(*var),
        }
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            BaseField::PadicRationals { .. } => FieldElem::Rational(BigRational::zero()),
            BaseField::RationalFunctions { p, .. } => {
                FieldElem::RatFunc(RatFunc { num: FpPoly::zero(*p), den: FpPoly::one(*p) })
            }
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        match self {
            BaseField::PadicRationals { .. } => FieldElem::Rational(BigRational::from_integer(n.clone())),
            BaseField::RationalFunctions { p, .. } => {
                let m = BigInt::from(*p);
                let mut r = n % &m;
                if r.is_negative() {
                    r += &m;
                }
                let c: u64 = r.try_into().expect("reduced residue fits u64");
                FieldElem::RatFunc(RatFunc { num: FpPoly::constant(*p, c), den: FpPoly::one(*p) })
            }
        }
    }

    /// The element `t` of F_p(t). Panics for ℚ.
    pub fn t_elem(&self) -> FieldElem {
        match self {
            BaseField::RationalFunctions { p, .. } => {
                FieldElem::RatFunc(RatFunc { num: FpPoly::t(*p), den: FpPoly::one(*p) })
            }
            BaseField::PadicRationals { .. } => panic!("t is not an element of the rationals"),
        }
    }

    /// The base valuation: v_p on ℚ, v_t on F_p(t). Returns `+inf`
    /// exactly on the zero element.
    pub fn nu(&self, a: &FieldElem) -> Value {
        match (self, a) {
            (BaseField::PadicRationals { p }, FieldElem::Rational(r)) => {
                if r.is_zero() {
                    return Value::Infinite;
                }
                let p = BigInt::from(*p);
                let vn = padic_order(r.numer(), &p);
                let vd = padic_order(r.denom(), &p);
                Value::from_int(vn - vd)
            }
            (BaseField::RationalFunctions { .. }, FieldElem::RatFunc(r)) => {
                if r.is_zero() {
                    return Value::Infinite;
                }
                let vn = r.num.t_order().unwrap() as i64;
                let vd = r.den.t_order().unwrap() as i64;
                Value::from_int(vn - vd)
            }
            _ => panic!("element does not belong to this base field"),
        }
    }

    /// Parse a field element per the input grammar; see the crate docs.
    pub fn parse_elem(&self, text: &str) -> Result<FieldElem> {
        crate::parse::parse_field_elem(self, text)
    }

    /// Render an element; round-trips through `parse_elem`.
    pub fn render_elem(&self, a: &FieldElem) -> String {
        a.to_string()
    }
}

fn padic_order(n: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let mut n = n.clone();
    let mut order = 0i64;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&n, p);
        if !r.is_zero() {
            return order;
        }
        order += 1;
        n = q;
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::PadicRationals { p } => write!(f, "Q under v_{p}"),
            BaseField::RationalFunctions { p, var } => write!(f, "F_{p}({var}) under v_{var}"),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(r) => write!(f, "{r}"),
            FieldElem::RatFunc(r) => {
                let var = 't';
                struct W<'a>(&'a FpPoly, char);
                impl fmt::Display for W<'_> {
                    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                        self.0.fmt_with_var(f, self.1)
                    }
                }
                if r.den.is_one() {
                    return write!(f, "{}", W(&r.num, var));
                }
                // Parenthesize multi-term numerators/denominators so the
                // rendering re-parses with * and / at equal precedence.
                let num_terms = r.num.coeffs.iter().filter(|&&c| c != 0).count();
                let den_terms = r.den.coeffs.iter().filter(|&&c| c != 0).count();
                if num_terms > 1 {
                    write!(f, "({})", W(&r.num, var))?;
                } else {
                    write!(f, "{}", W(&r.num, var))?;
                }
                let den_is_pure_power = den_terms == 1 && r.den.lead() == 1;
                if den_is_pure_power {
                    write!(f, "/{}", W(&r.den, var))
                } else {
                    write!(f, "/({})", W(&r.den, var))
                }
            }
        }
    }
}
