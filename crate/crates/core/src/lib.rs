//! Exact-arithmetic key polynomials and inductive valuations on K[x].
//!
//! This crate works with a simple transcendental extension K ↪ K(x) of a
//! valued base field and makes the key-polynomial calculus executable:
//!
//! - concrete valued base fields (ℚ, v_p) and (F_p(t), v_t) with exact
//!   rational / rational-function arithmetic ([`base_field`]);
//! - univariate polynomials over the base field with Euclidean division,
//!   Q-expansions and Hasse derivatives valid in any characteristic
//!   ([`poly`]);
//! - valuations of K[x] represented as augmented chains (a Gauss step
//!   plus augmentation steps), with truncations, expansion views and
//!   decidable divisibility of initial forms ([`valuation`]);
//! - the epsilon invariant, abstract-key certification and refutation,
//!   MacLane--Vaquie key checks, immediate successors, witness
//!   derivative orders and truncation depths ([`keypoly`]);
//! - independent brute-force oracles for differential testing
//!   ([`oracle`]);
//! - the two built-in demonstration chains and a deterministic property
//!   suite over them ([`demo`], [`suite`]).
//!
//! Everything is exact: values live in ℚ ∪ {+inf} ([`value::Value`]),
//! comparisons are decidable, and there is no floating point anywhere.
//!
//! The represented valuations are exactly those arising from finite
//! chains; an ambient valuation is always "whatever the full chain
//! computes" and each prefix computes the truncation with respect to its
//! last key. Pseudo-valuations (an infinite key value) are rejected.
//!
//! ```
//! use maclane::{BaseField, Poly, ValuationChain, Value};
//!
//! let base = BaseField::padic(2).unwrap();
//! let chain = ValuationChain::gauss(base, Value::new(1, 2)).unwrap();
//! let key = Poly::parse(base, "x^2+2").unwrap();
//! let chain = chain.augment(key, Value::from_int(2)).unwrap();
//! let f = Poly::parse(base, "x^4+4").unwrap();
//! assert_eq!(chain.evaluate(&f), Value::from_int(3));
//! ```

pub mod base_field;
pub mod demo;
pub mod error;
pub mod keypoly;
pub mod oracle;
mod parse;
pub mod poly;
pub mod suite;
pub mod valuation;
pub mod value;

pub use base_field::{BaseField, FieldElem};
pub use error::{Error, Result};
pub use keypoly::{EpsilonReport, KeyCertificate, KeyVerdict, MlvVerdict};
pub use oracle::{CoefficientSet, DividesOutcome};
pub use poly::{Poly, QExpansion};
pub use valuation::{AugmentationStep, ExpansionView, ValuationChain};
pub use value::Value;
