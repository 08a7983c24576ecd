//! The key-polynomial calculus: the invariant epsilon with its attaining
//! set and minimal index, abstract-key certification and refutation,
//! MacLane--Vaquie checks, immediate successors, the witness derivative
//! index for value-minimal expansions and truncation depths.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::oracle::{self, CoefficientSet};
use crate::poly::Poly;
use crate::valuation::ValuationChain;
use crate::value::Value;

/// The invariants of a polynomial P under a valuation: epsilon(P), the
/// set I(P) of derivative orders attaining it and b(P) = min I(P).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonReport {
    pub epsilon: Value,
    pub attaining: BTreeSet<u32>,
    pub b_min: u32,
}

impl fmt::Display for EpsilonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.attaining.iter().map(|b| b.to_string()).collect();
        write!(f, "epsilon={} I={{{}}} b={}", self.epsilon, items.join(","), self.b_min)
    }
}

/// epsilon(P) = max over b in 1..=deg P of (mu(P) - mu(d_b P)) / b,
/// skipping orders with vanishing derivative (their ratio would be -inf).
/// The order b = deg P always survives, so the maximum exists for every
/// non-constant P.
pub fn epsilon(chain: &ValuationChain, p: &Poly) -> Result<EpsilonReport> {
    let deg = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::EpsilonUndefined),
    };
    let mu_p = chain.evaluate(p);
    let mut best: Option<Value> = None;
    let mut attaining = BTreeSet::new();
    for b in 1..=deg as u32 {
        let db = p.hasse_derivative(b)?;
        if db.is_zero() {
            continue;
        }
        let ratio = mu_p.sub(&chain.evaluate(&db)).div_int(b);
        match &best {
            Some(current) if ratio < *current => {}
            Some(current) if ratio == *current => {
                attaining.insert(b);
            }
            _ => {
                best = Some(ratio);
                attaining = BTreeSet::from([b]);
            }
        }
    }
    let epsilon = best.expect("the order b = deg P has nonzero derivative");
    let b_min = *attaining.iter().next().expect("attaining set is nonempty");
    Ok(EpsilonReport { epsilon, attaining, b_min })
}

/// How a certificate was obtained: from the augmentation hypotheses or
/// from a bounded counterexample search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMethod {
    ByAugmentation,
    BySearch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KeyVerdict {
    Certified,
    Refuted { counterexample: Poly },
    Inconclusive { candidates_checked: usize },
}

#[derive(Clone, Debug)]
pub struct KeyCertificate {
    pub subject: Poly,
    pub verdict: KeyVerdict,
    pub method: CheckMethod,
}

impl fmt::Display for KeyCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let method = match self.method {
            CheckMethod::ByAugmentation => "by-augmentation",
            CheckMethod::BySearch => "by-search",
        };
        match &self.verdict {
            KeyVerdict::Certified => write!(f, "certified ({method})"),
            KeyVerdict::Refuted { counterexample } => {
                write!(f, "refuted ({method}) counterexample {counterexample}")
            }
            KeyVerdict::Inconclusive { candidates_checked } => {
                write!(f, "inconclusive ({method}) after {candidates_checked} candidates")
            }
        }
    }
}

/// Certify that `key(i)` is an abstract key polynomial for the full
/// chain. For i >= 1 this re-verifies the augmentation hypotheses: the
/// full chain agrees with the prefix below `deg key(i)` on a sample of
/// polynomials, and the full value of `key(i)` strictly exceeds its
/// prefix value. The Gauss key `x` is certified vacuously: an epsilon
/// comparison against it involves no polynomial of degree zero.
pub fn certify_abstract(full: &ValuationChain, i: usize) -> Result<KeyCertificate> {
    if i >= full.len() {
        return Err(Error::StepIndex { index: i, len: full.len() });
    }
    let subject = full.key(i).clone();
    if i == 0 {
        return Ok(KeyCertificate {
            subject,
            verdict: KeyVerdict::Certified,
            method: CheckMethod::ByAugmentation,
        });
    }
    let prefix = full.truncate(i - 1)?;
    let prefix_value = prefix.evaluate(&subject);
    if full.evaluate(&subject) <= prefix_value {
        return Err(Error::Verification(format!(
            "full value of key {subject} does not exceed its prefix value {prefix_value}"
        )));
    }
    let deg = subject.degree().expect("keys are nonzero");
    let budget = CoefficientSet::default_for(&full.base());
    for d in 0..deg {
        for f in oracle::enumerate_polys(full.base(), &budget, d, true) {
            if prefix.evaluate(&f) != full.evaluate(&f) {
                return Err(Error::Verification(format!(
                    "values below deg {deg} are not preserved: {f}"
                )));
            }
        }
    }
    for c in budget.nonzero_elems() {
        let f = Poly::constant(full.base(), c.clone());
        if prefix.evaluate(&f) != full.evaluate(&f) {
            return Err(Error::Verification(format!("constant value changed: {f}")));
        }
    }
    Ok(KeyCertificate { subject, verdict: KeyVerdict::Certified, method: CheckMethod::ByAugmentation })
}

/// One-sided refutation of abstract-key-ness: enumerate monic f with
/// `deg f < deg Q` over the budget, in canonical order, and report the
/// first counterexample with `epsilon(f) >= epsilon(Q)`. Never certifies.
pub fn refute_abstract(
    chain: &ValuationChain,
    q: &Poly,
    budget: &CoefficientSet,
) -> Result<KeyCertificate> {
    let deg = match q.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::EpsilonUndefined),
    };
    let eps_q = epsilon(chain, q)?.epsilon;
    let mut checked = 0usize;
    for d in 1..deg {
        for f in oracle::enumerate_polys(chain.base(), budget, d, true) {
            checked += 1;
            let eps_f = epsilon(chain, &f)?.epsilon;
            if eps_f >= eps_q {
                return Ok(KeyCertificate {
                    subject: q.clone(),
                    verdict: KeyVerdict::Refuted { counterexample: f },
                    method: CheckMethod::BySearch,
                });
            }
        }
    }
    Ok(KeyCertificate {
        subject: q.clone(),
        verdict: KeyVerdict::Inconclusive { candidates_checked: checked },
        method: CheckMethod::BySearch,
    })
}

/// For g with S_Q(g) != {0} under the truncation computed by `chain`
/// (whose last key must be Q), return the derivative order b with
/// `(mu_Q(g) - mu_Q(d_b g)) / b = epsilon(Q)`.
///
/// The order is `p^e * b(Q)` where `l = min(S_Q(g) \ {0}) = p^e * u`
/// with p not dividing u. The relevant p is the residue characteristic
/// of the base valuation (p for both concrete base fields): the witness
/// construction counts a multiplicity `C(l, p^e) = u` which must have
/// valuation zero, and over (Q, v_p) an integer multiple of p does not.
/// The equality is verified before returning; a failure indicates a
/// bug, since it is a proved property of abstract key polynomials.
pub fn witness_b(chain: &ValuationChain, q: &Poly, g: &Poly) -> Result<u32> {
    if q != chain.last_key() {
        return Err(Error::Hypothesis("Q must be the last key of the chain".into()));
    }
    let view = chain.expansion_view(q, g)?;
    let l = match view.min_indices.iter().find(|&&j| j != 0) {
        Some(&l) => l,
        None => return Err(Error::Hypothesis("S_Q(g) = {0}".into())),
    };
    let p = chain.base().prime();
    let mut pe: u32 = 1;
    {
        let mut l = l as u64;
        while l % p == 0 {
            pe = pe
                .checked_mul(p as u32)
                .ok_or_else(|| Error::Hypothesis("p^e overflows".into()))?;
            l /= p;
        }
    }
    let report = epsilon(chain, q)?;
    let b = pe
        .checked_mul(report.b_min)
        .ok_or_else(|| Error::Hypothesis("witness order overflows".into()))?;
    let db = g.hasse_derivative(b)?;
    if db.is_zero() {
        return Err(Error::Verification(format!(
            "derivative of order {b} vanishes on {g}"
        )));
    }
    let ratio = chain.evaluate(g).sub(&chain.evaluate(&db)).div_int(b);
    if ratio != report.epsilon {
        return Err(Error::Verification(format!(
            "witness ratio {ratio} differs from epsilon {}",
            report.epsilon
        )));
    }
    Ok(b)
}

/// Outcome of the epsilon comparison between a polynomial and a
/// truncation key: the proven relation together with both values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonGap {
    pub strict: bool,
    pub eps_f: Value,
    pub eps_key: Value,
}

impl fmt::Display for EpsilonGap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.strict { ">" } else { ">=" };
        write!(f, "epsilon(f)={} {} epsilon(Q)={}", self.eps_f, rel, self.eps_key)
    }
}

/// Given `(mu_Q(f) - mu_Q(d_b f)) / b = epsilon(Q)` with
/// `mu_Q(d_b f) = mu(d_b f)` (both checked), conclude
/// `epsilon(f) >= epsilon(Q)`, strictly when `mu(f) > mu_Q(f)`.
/// Here mu is the full chain and mu_Q its truncation at step `i`.
pub fn epsilon_gap(full: &ValuationChain, i: usize, f: &Poly, b: u32) -> Result<EpsilonGap> {
    let truncated = full.truncate(i)?;
    let key = full.key(i).clone();
    let eps_key = epsilon(full, &key)?.epsilon;
    let db = f.hasse_derivative(b)?;
    if db.is_zero() {
        return Err(Error::Hypothesis(format!("derivative of order {b} vanishes")));
    }
    let trunc_f = truncated.evaluate(f);
    let trunc_db = truncated.evaluate(&db);
    let ratio = trunc_f.sub(&trunc_db).div_int(b);
    if ratio != eps_key {
        return Err(Error::Hypothesis(format!(
            "truncated ratio {ratio} does not equal epsilon(Q) = {eps_key}"
        )));
    }
    if trunc_db != full.evaluate(&db) {
        return Err(Error::Hypothesis(
            "truncation does not already attain the value of the derivative".into(),
        ));
    }
    let strict = full.evaluate(f) > trunc_f;
    let eps_f = epsilon(full, f)?.epsilon;
    let holds = if strict { eps_f > eps_key } else { eps_f >= eps_key };
    if !holds {
        return Err(Error::Verification(format!(
            "epsilon gap violated: epsilon(f)={eps_f}, epsilon(Q)={eps_key}, strict={strict}"
        )));
    }
    Ok(EpsilonGap { strict, eps_f, eps_key })
}

/// Whether `key(i+1)` is an immediate successor of `key(i)`: the
/// truncation at `i` must drop the value of `key(i+1)` strictly, and no
/// monic polynomial of smaller degree from the budget may show the same
/// drop. A `true` answer is budget-relative; `false` is definitive.
pub fn is_immediate_successor(
    full: &ValuationChain,
    i: usize,
    budget: &CoefficientSet,
) -> Result<bool> {
    if i + 1 >= full.len() {
        return Err(Error::StepIndex { index: i + 1, len: full.len() });
    }
    let successor = full.key(i + 1);
    let truncated = full.truncate(i)?;
    if truncated.evaluate(successor) >= full.evaluate(successor) {
        return Ok(false);
    }
    let deg = successor.degree().expect("keys are nonzero");
    for d in 1..deg {
        for f in oracle::enumerate_polys(full.base(), budget, d, true) {
            if truncated.evaluate(&f) < full.evaluate(&f) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Evidence for mu-minimality of a key or candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Minimality {
    /// Last-key case: guaranteed by the transcendence of `in Q` in the
    /// graded ring; the enumerated budget was verified as well.
    Structural { candidates_checked: usize },
    /// Candidate case: the top term of the expansion by the chain's last
    /// key is value-minimal, so the initial form keeps full degree; the
    /// enumerated budget was verified as well.
    ExpansionTop { candidates_checked: usize },
    NotMinimal { reason: String },
}

/// Evidence for mu-irreducibility of a key or candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    /// Last-key case: `in Q` is a transcendental generator of the graded
    /// ring, hence prime.
    Structural,
    /// Candidate case: no homogeneous factorization was found over the
    /// budget. Budget-relative.
    NoFactorizationFound { candidates_checked: usize },
    Reducible { unit: String, left: Poly, right: Poly },
}

/// Combined MacLane--Vaquie verdict for a key or augmentation candidate.
#[derive(Clone, Debug)]
pub struct MlvVerdict {
    pub subject: Poly,
    pub minimal: Minimality,
    pub irreducible: Irreducibility,
}

impl MlvVerdict {
    pub fn accepted(&self) -> bool {
        !matches!(self.minimal, Minimality::NotMinimal { .. })
            && !matches!(self.irreducible, Irreducibility::Reducible { .. })
    }

    pub fn describe(&self) -> String {
        let minimal = match &self.minimal {
            Minimality::Structural { candidates_checked } => {
                format!("minimal (structural, {candidates_checked} candidates verified)")
            }
            Minimality::ExpansionTop { candidates_checked } => {
                format!("minimal (expansion top term, {candidates_checked} candidates verified)")
            }
            Minimality::NotMinimal { reason } => format!("not minimal: {reason}"),
        };
        let irreducible = match &self.irreducible {
            Irreducibility::Structural => "irreducible (structural)".to_string(),
            Irreducibility::NoFactorizationFound { candidates_checked } => {
                format!("irreducible within budget ({candidates_checked} factorizations tried)")
            }
            Irreducibility::Reducible { unit, left, right } => {
                format!("reducible: initial form factors as {unit}*({left})*({right})")
            }
        };
        format!("{minimal}; {irreducible}")
    }
}

impl fmt::Display for MlvVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// MacLane--Vaquie key check for `q` against `chain`.
///
/// When `q` is the chain's last key both conditions are structural: the
/// graded ring is a polynomial ring over the subring generated below
/// `deg q`, with `in q` transcendental. When `q` is an augmentation
/// candidate, minimality requires the top term of its expansion by the
/// current last key to be value-minimal, and irreducibility is decided
/// by a bounded search for homogeneous factorizations `u * a * b` with
/// monic factors of smaller degree. In both cases every monic budget
/// polynomial of degree below `deg q` is verified not divisible.
pub fn check_mlv_last(chain: &ValuationChain, q: &Poly, budget: &CoefficientSet) -> Result<MlvVerdict> {
    let deg = match q.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::BadDivisor),
    };
    if !q.is_monic() {
        return Err(Error::NotMonic);
    }
    let is_last = q == chain.last_key();

    let mut checked = 0usize;
    let mut divisible: Option<Poly> = None;
    'outer: for d in 1..deg {
        for f in oracle::enumerate_polys(chain.base(), budget, d, true) {
            checked += 1;
            let view = chain.expansion_view(q, &f)?;
            if !view.min_indices.contains(&0) {
                divisible = Some(f);
                break 'outer;
            }
        }
    }

    let minimal = if let Some(f) = divisible {
        Minimality::NotMinimal { reason: format!("divides {f} of degree below {deg}") }
    } else if is_last {
        Minimality::Structural { candidates_checked: checked }
    } else {
        // Candidate: the initial form must keep the full expansion degree,
        // otherwise it equals the initial form of a lower-degree polynomial
        // (up to a unit) and q divides that polynomial.
        let last = chain.last_key();
        let last_deg = last.degree().expect("keys are nonzero");
        let view = chain.expansion_view(last, q)?;
        if deg % last_deg == 0 && view.delta == deg / last_deg {
            Minimality::ExpansionTop { candidates_checked: checked }
        } else {
            Minimality::NotMinimal {
                reason: format!(
                    "initial form has expansion degree {} below {}",
                    view.delta,
                    deg / last_deg
                ),
            }
        }
    };

    let irreducible = if is_last {
        Irreducibility::Structural
    } else {
        let search = oracle::find_homogeneous_factorization(chain, q, budget)?;
        match search.found {
            Some(found) => Irreducibility::Reducible {
                unit: found.unit.to_string(),
                left: found.left,
                right: found.right,
            },
            None => Irreducibility::NoFactorizationFound {
                candidates_checked: search.candidates_checked,
            },
        }
    };

    Ok(MlvVerdict { subject: q.clone(), minimal, irreducible })
}

/// The smallest step index whose truncation already attains the full
/// value of `f`. Always exists: the last index works. By the truncation
/// monotonicity, every later prefix attains it as well.
pub fn truncation_depth(full: &ValuationChain, f: &Poly) -> usize {
    let target = full.evaluate(f);
    for i in 0..full.len() {
        let prefix = full.truncate(i).expect("index in range");
        if prefix.evaluate(f) == target {
            return i;
        }
    }
    full.len() - 1
}
