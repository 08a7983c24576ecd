//! Valuations of K[x] represented as augmented chains.
//!
//! A chain starts with a Gauss (monomial) step assigning a value to `x`
//! and grows by augmentation steps `(Q_i, gamma_i)`. Every prefix of a
//! chain computes the truncation of the full valuation with respect to
//! the prefix's last key, so all truncation comparisons are decidable by
//! exact rational arithmetic. The graded ring of a truncation is never
//! materialized: initial-form reasoning is reduced to value comparisons
//! and the combinatorics of the sets S_Q.

use std::collections::BTreeSet;
use std::fmt;

use crate::base_field::BaseField;
use crate::error::{Error, Result};
use crate::poly::{Poly, QExpansion};
use crate::value::Value;

/// One augmentation step: a monic key polynomial together with its
/// assigned (finite) value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentationStep {
    key: Poly,
    gamma: Value,
}

impl AugmentationStep {
    pub fn key(&self) -> &Poly {
        &self.key
    }

    pub fn gamma(&self) -> &Value {
        &self.gamma
    }
}

/// A valuation of K[x]: a Gauss step plus zero or more augmentations.
///
/// Invariants enforced at construction:
/// - step 0 has key `x`;
/// - key degrees are non-decreasing along the chain;
/// - each gamma strictly exceeds the previous chain's value of its key;
/// - every augmentation key passes the key-polynomial check against the
///   chain being augmented (unless explicitly skipped).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationChain {
    base: BaseField,
    steps: Vec<AugmentationStep>,
}

impl ValuationChain {
    /// The Gauss (monomial) valuation sending `x` to `gamma0`:
    /// `f = sum c_j x^j` gets `min_j (nu(c_j) + j*gamma0)`.
    pub fn gauss(base: BaseField, gamma0: Value) -> Result<Self> {
        if gamma0.is_infinite() {
            return Err(Error::InfiniteGamma);
        }
        Ok(ValuationChain {
            base,
            steps: vec![AugmentationStep { key: Poly::x(base), gamma: gamma0 }],
        })
    }

    /// Augment by `(key, gamma)` after checking the chain invariants and
    /// the key-polynomial criteria for `key` over `self`.
    pub fn augment(&self, key: Poly, gamma: Value) -> Result<Self> {
        self.augment_inner(key, gamma, true)
    }

    /// Augment without the key-polynomial check. Monicity, degree growth
    /// and strict value increase are still enforced.
    pub fn augment_unchecked(&self, key: Poly, gamma: Value) -> Result<Self> {
        self.augment_inner(key, gamma, false)
    }

    fn augment_inner(&self, key: Poly, gamma: Value, check_key: bool) -> Result<Self> {
        if !key.is_monic() || key.degree() == Some(0) {
            return Err(Error::NotMonic);
        }
        let new_deg = key.degree().ok_or(Error::NotMonic)?;
        let last_deg = self.last_key().degree().expect("keys are nonzero");
        if new_deg < last_deg {
            return Err(Error::DegreeDecrease { new: new_deg, last: last_deg });
        }
        if gamma.is_infinite() {
            return Err(Error::InfiniteGamma);
        }
        let current = self.evaluate(&key);
        if gamma <= current {
            return Err(Error::GammaNotGreater { current });
        }
        if check_key {
            let budget = crate::oracle::CoefficientSet::default_for(&self.base);
            let verdict = crate::keypoly::check_mlv_last(self, &key, &budget)?;
            if !verdict.accepted() {
                return Err(Error::KeyCheckFailed(verdict.describe()));
            }
        }
        let mut steps = self.steps.clone();
        steps.push(AugmentationStep { key, gamma });
        Ok(ValuationChain { base: self.base, steps })
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn steps(&self) -> &[AugmentationStep] {
        &self.steps
    }

    pub fn step(&self, i: usize) -> Option<&AugmentationStep> {
        self.steps.get(i)
    }

    pub fn key(&self, i: usize) -> &Poly {
        &self.steps[i].key
    }

    pub fn gamma(&self, i: usize) -> &Value {
        &self.steps[i].gamma
    }

    pub fn last_key(&self) -> &Poly {
        &self.steps.last().expect("chains are nonempty").key
    }

    pub fn last_gamma(&self) -> &Value {
        &self.steps.last().expect("chains are nonempty").gamma
    }

    /// The value of `f` under this chain. `+inf` exactly for `f = 0`.
    ///
    /// For the last step `(Q_k, gamma_k)` the value is the minimum of
    /// `evaluate(prefix, f_j) + j*gamma_k` over the Q_k-expansion of `f`;
    /// the Gauss step uses the monomial formula directly.
    pub fn evaluate(&self, f: &Poly) -> Value {
        self.evaluate_depth(self.steps.len() - 1, f)
    }

    fn evaluate_depth(&self, depth: usize, f: &Poly) -> Value {
        assert_eq!(f.field(), self.base, "polynomial over a different base field");
        if f.is_zero() {
            return Value::Infinite;
        }
        if depth == 0 {
            let gamma0 = &self.steps[0].gamma;
            let mut best: Option<Value> = None;
            for (j, c) in f.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let v = &self.base.nu(c) + &gamma0.scaled(j);
                best = Some(match best {
                    Some(b) if b <= v => b,
                    _ => v,
                });
            }
            return best.expect("nonzero polynomial has a nonzero coefficient");
        }
        let step = &self.steps[depth];
        let expansion = f.q_expansion(&step.key).expect("chain keys are monic of degree >= 1");
        let mut best: Option<Value> = None;
        for (j, g) in expansion.coefficients().iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let v = &self.evaluate_depth(depth - 1, g) + &step.gamma.scaled(j);
            best = Some(match best {
                Some(b) if b <= v => b,
                _ => v,
            });
        }
        best.expect("nonzero polynomial has a nonzero expansion coefficient")
    }

    /// The prefix chain through step `i`: the truncation of this
    /// valuation with respect to `key(i)`.
    pub fn truncate(&self, i: usize) -> Result<ValuationChain> {
        if i >= self.steps.len() {
            return Err(Error::StepIndex { index: i, len: self.steps.len() });
        }
        Ok(ValuationChain { base: self.base, steps: self.steps[..=i].to_vec() })
    }

    /// The Q-expansion of `f` together with the per-term values, the set
    /// S_Q of value-minimal indices, delta_Q = max S_Q and In_Q f.
    /// Values are computed with this chain, so for `Q = last_key()` the
    /// view describes the truncation given by the chain itself.
    pub fn expansion_view(&self, q: &Poly, f: &Poly) -> Result<ExpansionView> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let expansion = f.q_expansion(q)?;
        let q_value = self.evaluate(q);
        let mut term_values = Vec::with_capacity(expansion.len());
        for (j, g) in expansion.coefficients().iter().enumerate() {
            if g.is_zero() {
                term_values.push(Value::Infinite);
            } else {
                term_values.push(&self.evaluate(g) + &q_value.scaled(j));
            }
        }
        let min_value = term_values.iter().min().expect("expansions are nonempty").clone();
        let min_indices: BTreeSet<usize> = term_values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v == min_value)
            .map(|(j, _)| j)
            .collect();
        let delta = *min_indices.iter().next_back().expect("S_Q is nonempty");
        let mut initial_part = Poly::zero(self.base);
        let mut q_pow = Poly::one(self.base);
        let mut current = 0usize;
        for &j in &min_indices {
            while current < j {
                q_pow = &q_pow * q;
                current += 1;
            }
            initial_part = &initial_part + &(&expansion.coefficients()[j] * &q_pow);
        }
        let view = ExpansionView { expansion, term_values, min_value, min_indices, delta, initial_part };
        // in(In_Q f) = in(f): the discarded tail has strictly larger value.
        let tail = &(f - &view.initial_part);
        if !tail.is_zero() && self.evaluate(tail) <= view.min_value {
            return Err(Error::Verification(
                "initial part does not capture the initial form".into(),
            ));
        }
        Ok(view)
    }

    /// Whether the last key Q of this chain divides `in f` in the graded
    /// ring of the truncation the chain computes. By the structure
    /// theorem `gr K[x] = G[in Q]` with `in Q` transcendental, this holds
    /// exactly when the j = 0 term of the Q-expansion is not value-minimal.
    pub fn divides_last_key(&self, f: &Poly) -> Result<bool> {
        let view = self.expansion_view(&self.last_key().clone(), f)?;
        Ok(!view.min_indices.contains(&0))
    }

    /// Whether `key(i+1)` divides `in f` in the graded ring of the
    /// truncation at step `i`. The kernel of the natural map from that
    /// graded ring onto the finer one is principal, generated by the
    /// initial form of the successor key, so divisibility is equivalent
    /// to the truncated value dropping strictly below the full value.
    pub fn divides_successor(&self, i: usize, f: &Poly) -> Result<bool> {
        if i + 1 >= self.steps.len() {
            return Err(Error::StepIndex { index: i + 1, len: self.steps.len() });
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let truncated = self.truncate(i)?;
        Ok(truncated.evaluate(f) < self.evaluate(f))
    }
}

/// `f` and `g` have the same initial form: `mu(f - g) > mu(f) = mu(g)`.
pub fn mu_equivalent(chain: &ValuationChain, f: &Poly, g: &Poly) -> bool {
    let vf = chain.evaluate(f);
    let vg = chain.evaluate(g);
    if vf != vg {
        return false;
    }
    if vf.is_infinite() {
        return true;
    }
    chain.evaluate(&(f - g)) > vf
}

/// The decomposition data of a Q-expansion under a chain: per-term
/// values, mu_Q(f), S_Q(f), delta_Q(f) and In_Q f.
#[derive(Clone, Debug)]
pub struct ExpansionView {
    pub expansion: QExpansion,
    pub term_values: Vec<Value>,
    pub min_value: Value,
    pub min_indices: BTreeSet<usize>,
    pub delta: usize,
    pub initial_part: Poly,
}

impl ExpansionView {
    pub fn set_string(&self) -> String {
        let items: Vec<String> = self.min_indices.iter().map(|j| j.to_string()).collect();
        format!("{{{}}}", items.join(","))
    }
}

impl fmt::Display for ExpansionView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "muQ={} S={} delta={} InQ={}",
            self.min_value,
            self.set_string(),
            self.delta,
            self.initial_part
        )
    }
}
