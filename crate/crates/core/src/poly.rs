//! Univariate polynomials over the base field in the distinguished
//! variable `x`: Euclidean division, Q-expansion and Hasse (formal)
//! derivatives valid in any characteristic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::base_field::{BaseField, FieldElem};
use crate::error::{Error, Result};

/// Dense polynomial in `x`. The coefficient vector carries no trailing
/// zeros; the empty vector is the zero polynomial, whose degree is a
/// distinguished `None` rather than an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: BaseField,
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(field: BaseField, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(FieldElem::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: BaseField) -> Self {
        Poly { field, coeffs: vec![] }
    }

    pub fn constant(field: BaseField, c: FieldElem) -> Self {
        Poly::new(field, vec![c])
    }

    pub fn one(field: BaseField) -> Self {
        Poly::constant(field, field.one())
    }

    pub fn x(field: BaseField) -> Self {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn monomial(field: BaseField, c: FieldElem, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero(field);
        }
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Poly { field, coeffs }
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> FieldElem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(FieldElem::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field);
        }
        Poly::new(self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by `x^k`.
    pub fn shifted(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field, coeffs }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division by a monic divisor of degree >= 1:
    /// `self = q * g + r` with `deg r < deg g`, exact over the field.
    pub fn euclid_div(&self, g: &Poly) -> Result<(Poly, Poly)> {
        let dg = match g.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::BadDivisor),
        };
        if !g.is_monic() {
            return Err(Error::BadDivisor);
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dg];
        for i in (dg..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            quot[i - dg] = c.clone();
            for (j, gc) in g.coeffs.iter().enumerate() {
                rem[i - dg + j] = rem[i - dg + j].sub(&c.mul(gc));
            }
        }
        Ok((Poly::new(self.field, quot), Poly::new(self.field, rem)))
    }

    /// The Q-expansion `self = sum g_j Q^j` with `deg g_j < deg Q`,
    /// obtained by repeated Euclidean division.
    pub fn q_expansion(&self, q: &Poly) -> Result<QExpansion> {
        match q.degree() {
            Some(d) if d >= 1 && q.is_monic() => {}
            _ => return Err(Error::BadDivisor),
        }
        let mut coefficients = Vec::new();
        let mut rest = self.clone();
        if rest.is_zero() {
            coefficients.push(rest.clone());
        }
        while !rest.is_zero() {
            let (quot, rem) = rest.euclid_div(q)?;
            coefficients.push(rem);
            rest = quot;
        }
        Ok(QExpansion { divisor: q.clone(), coefficients })
    }

    /// The b-th Hasse derivative: the coefficient of `x^(n-b)` is
    /// `C(n, b) * c_n` with the binomial coefficient reduced into the
    /// base characteristic. Zero whenever `b > deg`.
    pub fn hasse_derivative(&self, b: u32) -> Result<Poly> {
        if b == 0 {
            return Err(Error::ZeroDerivativeOrder);
        }
        let b = b as usize;
        let deg = match self.degree() {
            Some(d) if d >= b => d,
            _ => return Ok(Poly::zero(self.field)),
        };
        let binom = binomial_column(&self.field, deg, b);
        let mut out = Vec::with_capacity(deg - b + 1);
        for n in b..=deg {
            out.push(self.coeffs[n].mul(&binom[n]));
        }
        Ok(Poly::new(self.field, out))
    }

    pub fn parse(field: BaseField, text: &str) -> Result<Poly> {
        crate::parse::parse_poly(&field, text)
    }
}

/// Column of binomial coefficients `C(n, b)` for `n = 0..=n_max`, computed
/// by the Pascal recurrence carried inside the base characteristic.
fn binomial_column(field: &BaseField, n_max: usize, b: usize) -> Vec<FieldElem> {
    let zero = field.zero();
    let one = field.one();
    // row[j] = C(n, j) for the current n, truncated at j = b.
    let mut row = vec![zero.clone(); b + 1];
    row[0] = one.clone();
    let mut column = Vec::with_capacity(n_max + 1);
    column.push(row[b].clone());
    for n in 1..=n_max {
        for j in (1..=b.min(n)).rev() {
            row[j] = row[j].add(&row[j - 1]);
        }
        column.push(row[b].clone());
    }
    column
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.field, rhs.field);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(self.field, out)
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly { field: self.field, coeffs: self.coeffs.iter().map(FieldElem::neg).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.field, rhs.field);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(self.field, out)
    }
}

/// The Q-expansion of a polynomial: coefficients `g_0..g_s` of degree
/// strictly below `deg Q` with `sum g_j Q^j` reconstructing the original.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    divisor: Poly,
    coefficients: Vec<Poly>,
}

impl QExpansion {
    pub fn divisor(&self) -> &Poly {
        &self.divisor
    }

    pub fn coefficients(&self) -> &[Poly] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Recompute `sum g_j Q^j`.
    pub fn reconstruct(&self) -> Poly {
        let field = self.divisor.field();
        let mut acc = Poly::zero(field);
        // Horner from the top coefficient down.
        for g in self.coefficients.iter().rev() {
            acc = &(&acc * &self.divisor) + g;
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = coeff_for_display(c);
            if first {
                if sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let xpart = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{xpart}")?;
            } else {
                let needs_parens = mag.contains('+') && !mag.starts_with('(');
                if needs_parens {
                    write!(f, "({mag})*{xpart}")?;
                } else {
                    write!(f, "{mag}*{xpart}")?;
                }
            }
        }
        Ok(())
    }
}

/// Split a coefficient into a leading sign and a magnitude string for
/// term-by-term rendering.
fn coeff_for_display(c: &FieldElem) -> (bool, String) {
    match c {
        FieldElem::Rational(r) => {
            use num_traits::Signed;
            if r.is_negative() {
                (true, (-r).to_string())
            } else {
                (false, r.to_string())
            }
        }
        // No canonical sign in characteristic p; residues render as-is.
        FieldElem::RatFunc(_) => (false, c.to_string()),
    }
}
