//! Independent brute-force ground truth: canonical enumeration of small
//! polynomials, a literal re-derivation of epsilon, and graded-ring
//! divisibility by explicit cofactor search.
//!
//! The code here deliberately avoids the evaluation shortcuts of the
//! main modules (the S_Q combinatorics, the Pascal-recurrence derivative
//! path), sharing only base arithmetic, so that differential tests
//! compare genuinely distinct routes.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rand::Rng;

use crate::base_field::{BaseField, FieldElem};
use crate::error::{Error, Result};
use crate::keypoly::EpsilonReport;
use crate::poly::Poly;
use crate::valuation::ValuationChain;
use crate::value::Value;

/// A finite coefficient set with a degree bound, used to budget searches
/// and enumerations. Always contains 0 and 1.
#[derive(Clone, Debug)]
pub struct CoefficientSet {
    elems: Vec<FieldElem>,
    max_degree: usize,
}

impl CoefficientSet {
    pub fn new(elems: Vec<FieldElem>, max_degree: usize) -> Result<Self> {
        let mut seen: Vec<FieldElem> = Vec::new();
        for e in elems {
            if !seen.contains(&e) {
                seen.push(e);
            }
        }
        let has_zero = seen.iter().any(FieldElem::is_zero);
        let has_one = seen.iter().any(FieldElem::is_one);
        if seen.is_empty() || !has_zero || !has_one {
            return Err(Error::BadCoefficientSet);
        }
        Ok(CoefficientSet { elems: seen, max_degree })
    }

    /// The default budget: {0, +-1, +-p, +-1/p, +-p^2} over the
    /// rationals, and the t-analogue {0, 1, -1, t, -t, 1/t, -1/t, t^2, -t^2}
    /// over F_p(t) (signs collapse in characteristic 2), degree bound 3.
    pub fn default_for(base: &BaseField) -> Self {
        let uniformizer = match base {
            BaseField::PadicRationals { p } => base.from_int(*p as i64),
            BaseField::RationalFunctions { .. } => base.t_elem(),
        };
        let one = base.one();
        let inv = uniformizer.inv().expect("uniformizer is nonzero");
        let square = uniformizer.mul(&uniformizer);
        let raw = vec![
            base.zero(),
            one.clone(),
            one.neg(),
            uniformizer.clone(),
            uniformizer.neg(),
            inv.clone(),
            inv.neg(),
            square.clone(),
            square.neg(),
        ];
        CoefficientSet::new(raw, 3).expect("default set contains 0 and 1")
    }

    pub fn elems(&self) -> &[FieldElem] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn with_max_degree(mut self, max_degree: usize) -> Self {
        self.max_degree = max_degree;
        self
    }

    pub fn nonzero_elems(&self) -> impl Iterator<Item = &FieldElem> {
        self.elems.iter().filter(|e| !e.is_zero())
    }

    /// A random polynomial of exactly the given degree with coefficients
    /// drawn from this set (leading coefficient nonzero).
    pub fn sample_poly<R: Rng>(
        &self,
        field: BaseField,
        rng: &mut R,
        deg: usize,
        monic: bool,
    ) -> Poly {
        let nonzero: Vec<&FieldElem> = self.nonzero_elems().collect();
        let mut coeffs = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            coeffs.push(self.elems[rng.random_range(0..self.elems.len())].clone());
        }
        if monic {
            coeffs.push(field.one());
        } else {
            coeffs.push(nonzero[rng.random_range(0..nonzero.len())].clone());
        }
        Poly::new(field, coeffs)
    }
}

/// Enumerate polynomials of exactly degree `deg` with coefficients from
/// the set, in canonical order: lexicographic over the coefficient tuple
/// in set order with the constant coefficient varying fastest; for the
/// non-monic enumeration the leading coefficient runs over the nonzero
/// elements and varies slowest. Exactly `|set|^deg` monic polynomials
/// and `(|set|-1) * |set|^deg` general ones.
pub fn enumerate_polys(
    field: BaseField,
    set: &CoefficientSet,
    deg: usize,
    monic: bool,
) -> PolyEnumerator<'_> {
    let nonzero: Vec<usize> = set
        .elems
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(i, _)| i)
        .collect();
    PolyEnumerator {
        field,
        set,
        nonzero,
        monic,
        lead: 0,
        idx: vec![0; deg],
        exhausted: false,
    }
}

pub struct PolyEnumerator<'a> {
    field: BaseField,
    set: &'a CoefficientSet,
    nonzero: Vec<usize>,
    monic: bool,
    lead: usize,
    idx: Vec<usize>,
    exhausted: bool,
}

impl PolyEnumerator<'_> {
    fn current(&self) -> Poly {
        let mut coeffs: Vec<FieldElem> =
            self.idx.iter().map(|&i| self.set.elems[i].clone()).collect();
        if self.monic {
            coeffs.push(self.field.one());
        } else {
            coeffs.push(self.set.elems[self.nonzero[self.lead]].clone());
        }
        Poly::new(self.field, coeffs)
    }

    fn advance(&mut self) {
        for slot in self.idx.iter_mut() {
            *slot += 1;
            if *slot < self.set.elems.len() {
                return;
            }
            *slot = 0;
        }
        if self.monic {
            self.exhausted = true;
        } else {
            self.lead += 1;
            if self.lead >= self.nonzero.len() {
                self.exhausted = true;
            }
        }
    }
}

impl Iterator for PolyEnumerator<'_> {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.exhausted {
            return None;
        }
        let poly = self.current();
        self.advance();
        Some(poly)
    }
}

/// Lucas' theorem: C(n, k) mod p via base-p digits.
fn binomial_mod_p(n: u64, k: u64, p: u64) -> u64 {
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * (binomial_exact(nd, kd) % p as u128) as u64 % p;
        n /= p;
        k /= p;
    }
    acc
}

/// Exact multiplicative binomial for small arguments.
fn binomial_exact(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// The b-th formal derivative computed without the main module's Pascal
/// recurrence: binomial coefficients come from Lucas' theorem in
/// characteristic p and from the exact multiplicative formula over
/// big integers in characteristic zero.
fn derivative_independent(f: &Poly, b: u32) -> Poly {
    let field = f.field();
    let deg = match f.degree() {
        Some(d) if d >= b as usize => d,
        _ => return Poly::zero(field),
    };
    let p = field.characteristic();
    let mut out = Vec::with_capacity(deg - b as usize + 1);
    for n in (b as usize)..=deg {
        let binom = match p {
            0 => field.from_bigint(&num_integer::binomial(BigInt::from(n), BigInt::from(b))),
            p => field.from_int(binomial_mod_p(n as u64, b as u64, p) as i64),
        };
        out.push(f.coeff(n).mul(&binom));
    }
    Poly::new(field, out)
}

/// Literal sweep over the defining formula for epsilon: collect every
/// ratio, then take the maximum. Same contract as `keypoly::epsilon`,
/// disjoint code path.
pub fn epsilon_bruteforce(chain: &ValuationChain, p: &Poly) -> Result<EpsilonReport> {
    let deg = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::EpsilonUndefined),
    };
    let mu_p = chain.evaluate(p);
    let mut ratios: Vec<(u32, Value)> = Vec::new();
    for b in 1..=deg as u32 {
        let db = derivative_independent(p, b);
        if db.is_zero() {
            continue;
        }
        ratios.push((b, mu_p.sub(&chain.evaluate(&db)).div_int(b)));
    }
    let epsilon = ratios.iter().map(|(_, v)| v.clone()).max().expect("at least b = deg survives");
    let attaining: BTreeSet<u32> =
        ratios.iter().filter(|(_, v)| *v == epsilon).map(|(b, _)| *b).collect();
    let b_min = *attaining.iter().next().expect("attaining set nonempty");
    Ok(EpsilonReport { epsilon, attaining, b_min })
}

/// Outcome of the cofactor search for graded divisibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DividesOutcome {
    Divides { witness: Poly },
    NotDivides,
    Unknown,
}

impl fmt::Display for DividesOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DividesOutcome::Divides { witness } => write!(f, "divides (witness {witness})"),
            DividesOutcome::NotDivides => write!(f, "does not divide"),
            DividesOutcome::Unknown => write!(f, "unknown"),
        }
    }
}

/// Search for a cofactor c with `mu(B - A*c) > mu(B)` and
/// `mu(A*c) = mu(B)`, which witnesses `in A | in B` in the graded ring.
///
/// The cofactor degree is capped at `deg B - deg A` plus the degree of
/// the chain's last key; when a witness of bounded degree must exist
/// (the last-key and successor cross-check cases) this range is
/// exhaustive, so a fruitless search within it reports `NotDivides`.
/// If the budget's own degree bound cuts the range short the answer is
/// `Unknown` instead.
pub fn graded_divides_bruteforce(
    chain: &ValuationChain,
    a: &Poly,
    b: &Poly,
    budget: &CoefficientSet,
) -> Result<DividesOutcome> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mu_a = chain.evaluate(a);
    let mu_b = chain.evaluate(b);
    let target = mu_b.sub(&mu_a);
    let slack = chain.last_key().degree().expect("keys are nonzero");
    let deg_a = a.degree().expect("nonzero");
    let deg_b = b.degree().expect("nonzero");
    let needed = deg_b.saturating_sub(deg_a) + slack;
    let cap = needed.min(budget.max_degree());
    for d in 0..=cap {
        for c in enumerate_polys(a.field(), budget, d, false) {
            if chain.evaluate(&c) != target {
                continue;
            }
            let prod = a * &c;
            if chain.evaluate(&(b - &prod)) > mu_b {
                return Ok(DividesOutcome::Divides { witness: c });
            }
        }
    }
    if budget.max_degree() >= needed {
        Ok(DividesOutcome::NotDivides)
    } else {
        Ok(DividesOutcome::Unknown)
    }
}

/// A homogeneous factorization of an initial form: `in q = in(u*a*b)`
/// with monic factors of degree >= 1 and a unit constant.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub unit: FieldElem,
    pub left: Poly,
    pub right: Poly,
}

/// Result of the bounded factorization search.
#[derive(Clone, Debug)]
pub struct FactorSearch {
    pub found: Option<Factorization>,
    pub candidates_checked: usize,
}

/// Search the budget for monic `a`, `b` with `deg a + deg b = deg q` and
/// a unit `u` such that `u*a*b` is mu-equivalent to `q`. Finding one
/// proves the initial form of `q` reducible (or `q` non-minimal when a
/// factor degenerates to a unit); exhausting the budget is only
/// budget-relative evidence of irreducibility.
pub fn find_homogeneous_factorization(
    chain: &ValuationChain,
    q: &Poly,
    budget: &CoefficientSet,
) -> Result<FactorSearch> {
    let deg = match q.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::BadDivisor),
    };
    let mu_q = chain.evaluate(q);
    let field = q.field();
    let mut checked = 0usize;
    for da in 1..=deg / 2 {
        let db = deg - da;
        for left in enumerate_polys(field, budget, da, true) {
            let mu_left = chain.evaluate(&left);
            for right in enumerate_polys(field, budget, db, true) {
                let mu_pair = &mu_left + &chain.evaluate(&right);
                let residual = mu_q.sub(&mu_pair);
                for unit in budget.nonzero_elems() {
                    checked += 1;
                    if field.nu(unit) != residual {
                        continue;
                    }
                    let prod = (&left * &right).scale(unit);
                    if chain.evaluate(&(q - &prod)) > mu_q {
                        return Ok(FactorSearch {
                            found: Some(Factorization {
                                unit: unit.clone(),
                                left,
                                right,
                            }),
                            candidates_checked: checked,
                        });
                    }
                }
            }
        }
    }
    Ok(FactorSearch { found: None, candidates_checked: checked })
}
