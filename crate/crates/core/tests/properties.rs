//! Property tests for the base fields, the value group and polynomial
//! arithmetic: valuation axioms of nu, field axioms, expansion
//! reconstruction, Euclidean uniqueness and the Leibniz rule for Hasse
//! derivatives in both characteristics.

use proptest::prelude::*;

use maclane::base_field::{BaseField, FieldElem};
use maclane::poly::Poly;
use maclane::value::Value;

fn q2() -> BaseField {
    BaseField::padic(2).unwrap()
}

fn f2t() -> BaseField {
    BaseField::rational_functions(2).unwrap()
}

/// Arbitrary rational element built through the public field API.
fn rational_elem() -> impl Strategy<Value = FieldElem> {
    (-200i64..=200, 1i64..=24).prop_map(|(n, d)| {
        let base = q2();
        base.from_int(n).div(&base.from_int(d)).expect("d > 0")
    })
}

/// Arbitrary element of F_2(t) as a ratio of small t-polynomials.
fn ratfunc_elem() -> impl Strategy<Value = FieldElem> {
    (
        proptest::collection::vec(0u64..2, 0..5),
        proptest::collection::vec(0u64..2, 0..4),
    )
        .prop_map(|(num, den)| {
            let base = f2t();
            let t = base.t_elem();
            let from_coeffs = |cs: &[u64]| {
                let mut acc = base.zero();
                let mut power = base.one();
                for &c in cs {
                    if c != 0 {
                        acc = acc.add(&power);
                    }
                    power = power.mul(&t);
                }
                acc
            };
            let n = from_coeffs(&num);
            // Force a nonzero denominator by adding t^len.
            let mut d = from_coeffs(&den);
            let mut power = base.one();
            for _ in 0..den.len() {
                power = power.mul(&t);
            }
            d = d.add(&power);
            n.div(&d).expect("denominator nonzero")
        })
}

fn elem_for(base: BaseField) -> BoxedStrategy<FieldElem> {
    match base {
        BaseField::PadicRationals { .. } => rational_elem().boxed(),
        BaseField::RationalFunctions { .. } => ratfunc_elem().boxed(),
    }
}

fn poly_for(base: BaseField, max_len: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(elem_for(base), 0..max_len)
        .prop_map(move |coeffs| Poly::new(base, coeffs))
}

fn monic_poly_for(base: BaseField, deg_range: std::ops::Range<usize>) -> impl Strategy<Value = Poly> {
    (deg_range, proptest::collection::vec(elem_for(base), 8)).prop_map(move |(deg, coeffs)| {
        let mut cs: Vec<FieldElem> = coeffs.into_iter().take(deg).collect();
        while cs.len() < deg {
            cs.push(base.zero());
        }
        cs.push(base.one());
        Poly::new(base, cs)
    })
}

/// C(b, s) as a field element, for the Hasse composition identity.
fn binomial_elem(base: BaseField, b: u32, s: u32) -> FieldElem {
    let mut acc: u64 = 1;
    let s = s.min(b - s);
    for i in 0..s as u64 {
        acc = acc * (b as u64 - i) / (i + 1);
    }
    base.from_int(acc as i64)
}

macro_rules! nu_axioms {
    ($name:ident, $base:expr) => {
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]
            #[test]
            fn $name(a in elem_for($base), b in elem_for($base)) {
                let base = $base;
                let va = base.nu(&a);
                let vb = base.nu(&b);
                // nu(ab) = nu(a) + nu(b), exactly.
                prop_assert_eq!(base.nu(&a.mul(&b)), &va + &vb);
                // nu(a+b) >= min, with equality when the values differ.
                let vsum = base.nu(&a.add(&b));
                let min = va.clone().min(vb.clone());
                prop_assert!(vsum >= min);
                if va != vb {
                    prop_assert_eq!(vsum, min);
                }
            }
        }
    };
}

nu_axioms!(nu_axioms_padic, q2());
nu_axioms!(nu_axioms_ratfunc, f2t());

macro_rules! field_axioms {
    ($name:ident, $base:expr) => {
        proptest! {
            #[test]
            fn $name(a in elem_for($base), b in elem_for($base), c in elem_for($base)) {
                let one = $base.one();
                prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                prop_assert_eq!(a.mul(&b), b.mul(&a));
                prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                prop_assert!(a.add(&a.neg()).is_zero());
                if !a.is_zero() {
                    prop_assert_eq!(a.mul(&a.inv().unwrap()), one);
                }
            }
        }
    };
}

field_axioms!(field_axioms_padic, q2());
field_axioms!(field_axioms_ratfunc, f2t());

proptest! {
    #[test]
    fn value_order_total_and_monotone(
        u in (-40i64..40, 1i64..12),
        v in (-40i64..40, 1i64..12),
        w in (-40i64..40, 1i64..12),
        inf_w in any::<bool>(),
    ) {
        let u = Value::new(u.0, u.1);
        let v = Value::new(v.0, v.1);
        let w = if inf_w { Value::Infinite } else { Value::new(w.0, w.1) };
        // total order
        prop_assert!(u <= v || v <= u);
        // addition is monotone
        if u <= v {
            prop_assert!(&u + &w <= &v + &w);
        }
    }
}

macro_rules! expansion_reconstructs {
    ($name:ident, $base:expr) => {
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]
            #[test]
            fn $name(f in poly_for($base, 10), q in monic_poly_for($base, 1..4)) {
                let exp = f.q_expansion(&q).unwrap();
                prop_assert_eq!(exp.reconstruct(), f.clone());
                let dq = q.degree().unwrap();
                for g in exp.coefficients() {
                    prop_assert!(g.degree().map_or(true, |d| d < dq));
                }
                if !f.is_zero() {
                    prop_assert!(!exp.coefficients().last().unwrap().is_zero());
                }
            }
        }
    };
}

expansion_reconstructs!(expansion_reconstructs_padic, q2());
expansion_reconstructs!(expansion_reconstructs_ratfunc, f2t());

macro_rules! euclid_unique {
    ($name:ident, $base:expr) => {
        proptest! {
            #[test]
            fn $name(
                quot in poly_for($base, 6),
                rem_raw in poly_for($base, 8),
                g in monic_poly_for($base, 1..4),
            ) {
                // Build f = quot*g + r with deg r < deg g; division must
                // recover exactly (quot, r).
                let dg = g.degree().unwrap();
                let rem = Poly::new($base, rem_raw.coeffs().iter().take(dg).cloned().collect());
                let f = &(&quot * &g) + &rem;
                let (q2, r2) = f.euclid_div(&g).unwrap();
                prop_assert_eq!(q2, quot);
                prop_assert_eq!(r2, rem);
            }
        }
    };
}

euclid_unique!(euclid_unique_padic, q2());
euclid_unique!(euclid_unique_ratfunc, f2t());

macro_rules! hasse_leibniz {
    ($name:ident, $base:expr) => {
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(500))]
            #[test]
            fn $name(f in poly_for($base, 7), g in poly_for($base, 7), b in 1u32..=6) {
                let base = $base;
                // d_b(fg) = sum_{s=0..b} d_s f * d_{b-s} g, with d_0 = id.
                let lhs = (&f * &g).hasse_derivative(b).unwrap();
                let mut rhs = Poly::zero(base);
                for s in 0..=b {
                    let df = if s == 0 { f.clone() } else { f.hasse_derivative(s).unwrap() };
                    let dg = if s == b { g.clone() } else { g.hasse_derivative(b - s).unwrap() };
                    rhs = &rhs + &(&df * &dg);
                }
                prop_assert_eq!(lhs, rhs);
            }
        }
    };
}

hasse_leibniz!(hasse_leibniz_padic, q2());
hasse_leibniz!(hasse_leibniz_ratfunc, f2t());

macro_rules! hasse_composition {
    ($name:ident, $base:expr) => {
        proptest! {
            #[test]
            fn $name(f in poly_for($base, 8), b in 2u32..=6, s_raw in 1u32..=5) {
                let s = s_raw.min(b - 1);
                // d_s d_{b-s} = C(b, s) d_b
                let lhs = f.hasse_derivative(b - s).unwrap().hasse_derivative(s).unwrap();
                let rhs = f.hasse_derivative(b).unwrap().scale(&binomial_elem($base, b, s));
                prop_assert_eq!(lhs, rhs);
            }
        }
    };
}

hasse_composition!(hasse_composition_padic, q2());
hasse_composition!(hasse_composition_ratfunc, f2t());

macro_rules! display_round_trip {
    ($name:ident, $base:expr) => {
        proptest! {
            #[test]
            fn $name(f in poly_for($base, 8)) {
                let rendered = f.to_string();
                let parsed = Poly::parse($base, &rendered).unwrap();
                prop_assert_eq!(parsed, f);
            }
        }
    };
}

display_round_trip!(display_round_trip_padic, q2());
display_round_trip!(display_round_trip_ratfunc, f2t());
