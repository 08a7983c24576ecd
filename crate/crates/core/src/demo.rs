//! The two built-in demonstration chains.
//!
//! `sqrt-minus-2`: over (ℚ, v_2), the Gauss step x -> 1/2 augmented by
//! x^2 + 2 -> 2, the classical chain approximating a valuation centered
//! at a square root of -2.
//!
//! `char2-xsq-t`: over (F_2(t), v_t), the Gauss step x -> 1/2 augmented
//! by x^2 + t -> 3/2; in characteristic 2 the first derivative of the
//! key vanishes, which exercises the positive-characteristic branches.

use crate::base_field::BaseField;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::valuation::ValuationChain;
use crate::value::Value;

pub const DEMO_NAMES: [&str; 2] = ["sqrt-minus-2", "char2-xsq-t"];

pub fn demo_chain(name: &str) -> Result<ValuationChain> {
    match name {
        "sqrt-minus-2" => {
            let base = BaseField::padic(2)?;
            let chain = ValuationChain::gauss(base, Value::new(1, 2))?;
            chain.augment(Poly::parse(base, "x^2+2")?, Value::from_int(2))
        }
        "char2-xsq-t" => {
            let base = BaseField::rational_functions(2)?;
            let chain = ValuationChain::gauss(base, Value::new(1, 2))?;
            chain.augment(Poly::parse(base, "x^2+t")?, Value::new(3, 2))
        }
        other => Err(Error::UnknownDemo(other.to_string())),
    }
}
