//! Deterministic property suite over a valuation chain.
//!
//! Each check exercises one proved statement of the key-polynomial
//! calculus with exact arithmetic: valuation axioms, the product
//! remainder law, the derivative inequality, witness derivative orders,
//! truncation monotonicity, the MacLane--Vaquie conditions for the last
//! key, successor minimality (cross-checked against the brute-force
//! oracle), refutation/certification consistency and the differential
//! epsilon test. Sampling is seeded, so a fixed seed gives a
//! byte-reproducible report.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::base_field::BaseField;
use crate::keypoly::{self, KeyVerdict, Minimality};
use crate::oracle::{self, CoefficientSet, DividesOutcome};
use crate::poly::Poly;
use crate::valuation::{mu_equivalent, ValuationChain};
use crate::value::Value;

/// Result of one suite check.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn pass(name: &'static str, detail: String) -> Self {
        CheckOutcome { name, passed: true, detail }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        CheckOutcome { name, passed: false, detail }
    }
}

fn random_nonzero(
    set: &CoefficientSet,
    field: BaseField,
    rng: &mut ChaCha8Rng,
    max_deg: usize,
) -> Poly {
    let deg = rng.random_range(0..=max_deg);
    set.sample_poly(field, rng, deg, false)
}

/// Run every check against the chain. `samples` scales the randomized
/// checks; enumerated checks always run in full over the budget.
pub fn run_property_suite(
    chain: &ValuationChain,
    budget: &CoefficientSet,
    samples: usize,
    seed: u64,
) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    out.push(check_axioms_product(chain, budget, samples, seed));
    out.push(check_axioms_ultrametric(chain, budget, samples, seed + 1));
    out.push(check_rem_prod(chain, budget, samples, seed + 2));
    out.push(check_inegalite(chain, budget, samples, seed + 3));
    out.push(check_theprop_witness(chain, budget, samples, seed + 4));
    out.push(check_truncation_monotone(chain, budget, samples, seed + 5));
    out.push(check_mlv_last_key(chain, budget));
    out.push(check_successor_minimal(chain, budget));
    out.push(check_successor_oracle(chain, budget));
    out.push(check_refute_certified(chain, budget));
    out.push(check_epsilon_differential(chain, budget, samples, seed + 6));
    out.push(check_epsilon_monotone(chain));
    out.push(check_truncation_depth(chain, budget, samples, seed + 7));
    out.push(check_mu_equivalence(chain, budget, samples, seed + 8));
    out
}

/// evaluate(fg) = evaluate(f) + evaluate(g), exactly.
fn check_axioms_product(
    chain: &ValuationChain,
    budget: &CoefficientSet,
    samples: usize,
    seed: u64,
) -> CheckOutcome {
    const NAME: &str = "axioms-product";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = chain.base();
    for _ in 0..samples {
        let f = random_nonzero(budget, field, &mut rng, 5);
        let g = random_nonzero(budget, field, &mut rng, 5);
        let lhs = chain.evaluate(&(&f * &g));
        let rhs = &chain.evaluate(&f) + &chain.evaluate(&g);
        if lhs != rhs {
            return CheckOutcome::fail(NAME, format!("mu(fg) != mu(f)+mu(g) for f={f}, g={g}"));
        }
    }
    CheckOutcome::pass(NAME, format!("{samples} pairs"))
}

/// evaluate(f+g) >= min(evaluate(f), evaluate(g)), with equality when
/// the two values differ.
fn check_axioms_ultrametric(
    chain: &ValuationChain,
    budget: &CoefficientSet,
    samples: usize,
    seed: u64,
) -> CheckOutcome {
    const NAME: &str = "axioms-ultrametric";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = chain.base();
    for _ in 0..samples {
        let f = random_nonzero(budget, field, &mut rng, 5);
        let g = random_nonzero(budget, field, &mut rng, 5);
        let vf = chain.evaluate(&f);
        let vg = chain.evaluate(&g);
        let vsum = chain.evaluate(&(&f + &g));
        let min = vf.clone().min(vg.clone());
        if vsum < min {
            return CheckOutcome::fail(NAME, format!("mu(f+g) < min for f={f}, g={g}"));
        }
        if vf != vg && vsum != min {
            return CheckOutcome::fail(
                NAME,
                format!("mu(f+g) != min despite mu(f) != mu(g) for f={f}, g={g}"),
            );
        }
    }
    CheckOutcome::pass(NAME, format!("{samples} pairs"))
}

/// For the last key Q of each prefix and products of smaller-degree
/// polynomials with Euclidean division qQ + r:
/// mu(r) = mu(product) < mu(qQ).
fn check_rem_prod(
    chain: &ValuationChain,
    budget: &CoefficientSet,
    samples: usize,
    seed: u64,
) -> CheckOutcome {
    const NAME: &str = "rem-prod";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = chain.base();
    let mut ran = 0usize;
    for i in 0..chain.len() {
        let q = chain.key(i).clone();
        let deg_q = q.degree().expect("keys are nonzero");
        for _ in 0..samples {
            let t = rng.random_range(2..=4usize);
            let mut product = Poly::one(field);
            for _ in 0..t {
                let deg = rng.random_range(0..deg_q);
                let factor = budget.sample_poly(field, &mut rng, deg, false);
                product = &product * &factor;
            }
            let (quot, rem) = product.euclid_div(&q).expect("keys are monic");
            let v_prod = chain.evaluate(&product);
            let v_rem = chain.evaluate(&rem);
            let v_qq = chain.evaluate(&(&quot * &q));
            if v_rem != v_prod || v_prod >= v_qq {
                return CheckOutcome::fail(
                    NAME,
                    format!("violated at step {i} for product {product}"),
                );
            }
            ran += 1;
        }
    }
    CheckOutcome::pass(NAME, format!("{ran} products across {} prefixes", chain.len()))
}

/// mu_Q(d_b f) >= mu_Q(f) - b*epsilon(Q) for every prefix truncation.
fn check_inegalite(
    chain: &ValuationChain,
    budget: &CoefficientSet,
    samples: usize,
    seed: u64,
) -> CheckOutcome {
    const NAME: &str = "inegalite";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = chain.base();
    let mut ran = 0usize;
    for i in 0..chain.len() {
        let truncated = chain.truncate(i).expect("index in range");
        let eps = match keypoly::epsilon(chain, chain.key(i)) {
            Ok(report) => report.epsilon,
            Err(e) => return CheckOutcome::fail(NAME, format!("epsilon failed: {e}")),
        };
        for _ in 0..samples {
            let f = random_nonzero(budget, field, &mut rng, 6);
            let deg = f.degree().expect("nonzero");
            let v_f = truncated.evaluate(&f);
            for b in 1..=deg as u32 {
                let db = f.hasse_derivative(b).expect("b >= 1");
                let bound = v_f.sub(&eps.scaled(b as usize));
                if truncated.evaluate(&db) < bound {
                    return CheckOutcome::fail(
                        NAME,
                        format!("violated at step {i}, f={f}, b={b}"),
                    );
                }
                ran += 1;
            }
        }
    }
    CheckOutcome::pass(NAME, format!("{ran} derivative bounds"))
}

/// For g with S_Q(g) != {0}: the witness order b satisfies
/// (mu_Q(g) - mu_Q(d_b g)) / b = epsilon(Q) exactly (verified inside
/// `witness_b`). Half of the samples force the minimal nonzero index
/// of S_Q(g) to be even, which in characteristic 2 makes the p-power
/// part of the witness nontrivial.
fn check_theprop_witness(
    chain: &ValuationChain,
    budget: &CoefficientSet,
    samples: usize,
    seed: u64,
) -> CheckOutcome {
    const NAME: &str = "theprop-witness";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = chain.base();
    let q = chain.last_key().clone();
    let deg_q = q.degree().expect("keys are nonzero");
    let mut verified = 0usize;
    let mut attempts = 0usize;
    while verified < samples && attempts < samples * 40 {
        attempts += 1;
        let force_even = verified % 2 == 1;
        let j_max = rng.random_range(1..=3usize);
        let mut g = Poly::zero(field);
        let mut q_pow = Poly::one(field);
        for j in 0..=j_max {
            let skip_low = force_even && j < 2;
            let coeff = if skip_low || (j < j_max && rng.random_range(0..3u8) == 0) {
                Poly::zero(field)
            } else {
                let deg = rng.random_range(0..deg_q);
                budget.sample_poly(field, &mut rng, deg, false)
            };
            g = &g + &(&coeff * &q_pow);
            q_pow = &q_pow * &q;
        }
        if g.is_zero() {
            continue;
        }
        let view = match chain.expansion_view(&q, &g) {
            Ok(view) => view,
            Err(_) => continue,
        };
        if view.min_indices == std::collections::BTreeSet::from([0]) {
            continue;
        }
        match keypoly::witness_b(chain, &q, &g) {
            Ok(_) => verified += 1,
            Err(e) => {
                return CheckOutcome::fail(NAME, format!("witness failed for g={g}: {e}"));
            }
        }
    }
    if verified < samples {
        return CheckOutcome::fail(
            NAME,
            format!("only generated {verified} of {samples} admissible samples"),
        );
    }
    CheckOutcome::pass(NAME, format!("{verified} witnesses verified"))
}

/// Truncation values are monotone along prefixes and value attainment
/// propagates forward.
fn check_truncation_monotone(
    chain: &ValuationChain,
    budget: &CoefficientSet,
    samples: usize,
    seed: u64,
) -> CheckOutcome {
    const NAME: &str = "truncation-monotone";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = chain.base();
    for _ in 0..samples {
        let f = random_nonzero(budget, field, &mut rng, 6);
        let full_value = chain.evaluate(&f);
        let mut previous: Option<Value> = None;
        let mut attained = false;
        for i in 0..chain.len() {
            let v = chain.truncate(i).expect("index in range").evaluate(&f);
            if let Some(prev) = &previous {
                if v < *prev {
                    return CheckOutcome::fail(NAME, format!("values decreased for f={f}"));
                }
            }
            if v > full_value {
                return CheckOutcome::fail(NAME, format!("prefix exceeds full value for f={f}"));
            }
            if attained && v != full_value {
                return CheckOutcome::fail(NAME, format!("attainment lost for f={f}"));
            }
            if v == full_value {
                attained = true;
            }
            previous = Some(v);
        }
        if !attained {
            return CheckOutcome::fail(NAME, format!("full value never attained for f={f}"));
        }
    }
    CheckOutcome::pass(NAME, format!("{samples} polynomials"))
}

/// The last key passes the MacLane--Vaquie check structurally, with the
/// budget enumeration confirming minimality.
fn check_mlv_last_key(chain: &ValuationChain, budget: &CoefficientSet) -> CheckOutcome {
    const NAME: &str = "mlv-last-key";
    let q = chain.last_key().clone();
    match keypoly::check_mlv_last(chain, &q, budget) {
        Ok(verdict) if verdict.accepted() => {
            let checked = match verdict.minimal {
                Minimality::Structural { candidates_checked } => candidates_checked,
                _ => 0,
            };
            CheckOutcome::pass(NAME, format!("structural; {checked} candidates not divisible"))
        }
        Ok(verdict) => CheckOutcome::fail(NAME, verdict.describe()),
        Err(e) => CheckOutcome::fail(NAME, e.to_string()),
    }
}

/// Every adjacent key pair is an immediate successor pair over the budget.
fn check_successor_minimal(chain: &ValuationChain, budget: &CoefficientSet) -> CheckOutcome {
    const NAME: &str = "successor-minimal";
    if chain.len() < 2 {
        return CheckOutcome::pass(NAME, "no augmentation steps".into());
    }
    for i in 0..chain.len() - 1 {
        match keypoly::is_immediate_successor(chain, i, budget) {
            Ok(true) => {}
            Ok(false) => {
                return CheckOutcome::fail(NAME, format!("step {} is not minimal", i + 1))
            }
            Err(e) => return CheckOutcome::fail(NAME, e.to_string()),
        }
    }
    CheckOutcome::pass(NAME, format!("{} adjacent pairs (budget-relative)", chain.len() - 1))
}

/// divides_successor agrees with the brute-force cofactor search on an
/// enumerated family, ignoring Unknown oracle outputs.
fn check_successor_oracle(chain: &ValuationChain, budget: &CoefficientSet) -> CheckOutcome {
    const NAME: &str = "successor-oracle";
    if chain.len() < 2 {
        return CheckOutcome::pass(NAME, "no augmentation steps".into());
    }
    let field = chain.base();
    let i = chain.len() - 2;
    let truncated = chain.truncate(i).expect("index in range");
    let successor = chain.key(i + 1).clone();
    let oracle_budget = budget.clone().with_max_degree(4);
    let mut agreed = 0usize;
    let mut unknown = 0usize;
    for deg in 1..=2usize {
        for f in oracle::enumerate_polys(field, budget, deg, true) {
            let structural = match chain.divides_successor(i, &f) {
                Ok(d) => d,
                Err(e) => return CheckOutcome::fail(NAME, e.to_string()),
            };
            let brute =
                match oracle::graded_divides_bruteforce(&truncated, &successor, &f, &oracle_budget)
                {
                    Ok(outcome) => outcome,
                    Err(e) => return CheckOutcome::fail(NAME, e.to_string()),
                };
            match brute {
                DividesOutcome::Unknown => unknown += 1,
                DividesOutcome::Divides { witness } => {
                    if !structural {
                        return CheckOutcome::fail(
                            NAME,
                            format!("oracle found witness {witness} for f={f} but structural says no"),
                        );
                    }
                    agreed += 1;
                }
                DividesOutcome::NotDivides => {
                    if structural {
                        return CheckOutcome::fail(
                            NAME,
                            format!("structural divides f={f} but oracle found no witness"),
                        );
                    }
                    agreed += 1;
                }
            }
        }
    }
    CheckOutcome::pass(NAME, format!("{agreed} agreements, {unknown} unknown"))
}

/// Every chain key certifies as abstract and survives refutation over
/// the full budget; certification and refutation never contradict.
fn check_refute_certified(chain: &ValuationChain, budget: &CoefficientSet) -> CheckOutcome {
    const NAME: &str = "refute-certified";
    for i in 0..chain.len() {
        match keypoly::certify_abstract(chain, i) {
            Ok(cert) if cert.verdict == KeyVerdict::Certified => {}
            Ok(cert) => return CheckOutcome::fail(NAME, format!("step {i}: {cert}")),
            Err(e) => return CheckOutcome::fail(NAME, format!("step {i}: {e}")),
        }
        let q = chain.key(i).clone();
        match keypoly::refute_abstract(chain, &q, budget) {
            Ok(cert) => match cert.verdict {
                KeyVerdict::Inconclusive { .. } => {}
                other => {
                    return CheckOutcome::fail(NAME, format!("step {i} refuted: {other:?}"))
                }
            },
            Err(e) => return CheckOutcome::fail(NAME, format!("step {i}: {e}")),
        }
    }
    CheckOutcome::pass(NAME, format!("{} keys certified, none refuted", chain.len()))
}

/// keypoly::epsilon agrees with the literal brute-force sweep.
fn check_epsilon_differential(
    chain: &ValuationChain,
    budget: &CoefficientSet,
    samples: usize,
    seed: u64,
) -> CheckOutcome {
    const NAME: &str = "epsilon-differential";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = chain.base();
    for _ in 0..samples {
        let deg = rng.random_range(1..=6usize);
        let f = budget.sample_poly(field, &mut rng, deg, false);
        let fast = match keypoly::epsilon(chain, &f) {
            Ok(report) => report,
            Err(e) => return CheckOutcome::fail(NAME, e.to_string()),
        };
        let brute = match oracle::epsilon_bruteforce(chain, &f) {
            Ok(report) => report,
            Err(e) => return CheckOutcome::fail(NAME, e.to_string()),
        };
        if fast != brute {
            return CheckOutcome::fail(NAME, format!("disagreement on f={f}: {fast} vs {brute}"));
        }
    }
    CheckOutcome::pass(NAME, format!("{samples} differential comparisons"))
}

/// epsilon is strictly increasing along the chain keys.
fn check_epsilon_monotone(chain: &ValuationChain) -> CheckOutcome {
    const NAME: &str = "epsilon-monotone";
    let mut previous: Option<Value> = None;
    for i in 0..chain.len() {
        let eps = match keypoly::epsilon(chain, chain.key(i)) {
            Ok(report) => report.epsilon,
            Err(e) => return CheckOutcome::fail(NAME, e.to_string()),
        };
        if let Some(prev) = &previous {
            if eps <= *prev {
                return CheckOutcome::fail(NAME, format!("epsilon not increasing at step {i}"));
            }
        }
        previous = Some(eps);
    }
    CheckOutcome::pass(NAME, format!("strictly increasing over {} keys", chain.len()))
}

/// truncation_depth returns the first prefix attaining the full value.
fn check_truncation_depth(
    chain: &ValuationChain,
    budget: &CoefficientSet,
    samples: usize,
    seed: u64,
) -> CheckOutcome {
    const NAME: &str = "truncation-depth";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = chain.base();
    for _ in 0..samples {
        let f = random_nonzero(budget, field, &mut rng, 6);
        let depth = keypoly::truncation_depth(chain, &f);
        let full_value = chain.evaluate(&f);
        for i in 0..chain.len() {
            let v = chain.truncate(i).expect("index in range").evaluate(&f);
            let attains = v == full_value;
            if attains != (i >= depth) {
                return CheckOutcome::fail(NAME, format!("depth wrong for f={f}"));
            }
        }
    }
    CheckOutcome::pass(NAME, format!("{samples} polynomials"))
}

/// The mu-equivalence characterization: adding a strictly larger-valued
/// perturbation preserves the initial form; scaling by the uniformizer
/// does not.
fn check_mu_equivalence(
    chain: &ValuationChain,
    budget: &CoefficientSet,
    samples: usize,
    seed: u64,
) -> CheckOutcome {
    const NAME: &str = "mu-equivalence";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = chain.base();
    let uniformizer = match field {
        BaseField::PadicRationals { p } => field.from_int(p as i64),
        BaseField::RationalFunctions { .. } => field.t_elem(),
    };
    let shift = uniformizer.mul(&uniformizer);
    for _ in 0..samples {
        let f = random_nonzero(budget, field, &mut rng, 5);
        let g = &f + &f.scale(&shift);
        if !mu_equivalent(chain, &f, &g) {
            return CheckOutcome::fail(NAME, format!("perturbation changed initial form of {f}"));
        }
        if chain.evaluate(&g) != chain.evaluate(&f) {
            return CheckOutcome::fail(NAME, format!("perturbation changed value of {f}"));
        }
        let h = f.scale(&uniformizer);
        if mu_equivalent(chain, &f, &h) {
            return CheckOutcome::fail(NAME, format!("scaled polynomial equivalent to {f}"));
        }
        // Random perturbations with strictly larger value, when found.
        let candidate = random_nonzero(budget, field, &mut rng, 5);
        if chain.evaluate(&candidate) > chain.evaluate(&f) {
            let g = &f + &candidate;
            if !mu_equivalent(chain, &f, &g) {
                return CheckOutcome::fail(NAME, format!("random perturbation broke {f}"));
            }
        }
    }
    CheckOutcome::pass(NAME, format!("{samples} perturbation triples"))
}
