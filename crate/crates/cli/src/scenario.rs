//! Scenario files: a base-field descriptor, a chain as an ordered list
//! of (key polynomial, gamma) steps, an optional budget, and a list of
//! queries. Line oriented; `#` starts a comment; multi-argument
//! directives separate their arguments with `;` so polynomials may
//! contain spaces.
//!
//! ```text
//! field padic 2
//! step x ; 1/2
//! step x^2+2 ; 2
//! budget 0,1,-1,2,-2,1/2,-1/2 ; 3
//! eval x^4+4
//! expand x^2+2 ; x^4+4
//! epsilon x^2+2
//! check-akp 1
//! check-mlv x^2+2
//! successor 0
//! depth x^4+4
//! refute x^2+2
//! oracle-compare x^2+2 ; x^4+4
//! ```

use maclane::oracle::CoefficientSet;
use maclane::{BaseField, Poly, ValuationChain, Value};

/// A scenario-level error: anything that makes the input unusable.
/// These map to exit code 2.
#[derive(Debug)]
pub struct ScenarioError {
    pub line: Option<usize>,
    pub message: String,
}

impl std::fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl ScenarioError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ScenarioError { line: Some(line), message: message.into() }
    }
}

#[derive(Clone, Debug)]
pub enum Query {
    Eval { f: Poly },
    Expand { q: Poly, f: Poly },
    Epsilon { p: Poly },
    CheckAkp { index: usize },
    CheckMlv { q: Poly },
    Successor { index: usize },
    Depth { f: Poly },
    Refute { q: Poly },
    OracleCompare { a: Poly, b: Poly },
}

pub struct Scenario {
    pub name: String,
    pub base: BaseField,
    pub chain: ValuationChain,
    pub budget: CoefficientSet,
    pub queries: Vec<Query>,
}

pub fn parse_budget_spec(base: &BaseField, text: &str) -> Result<CoefficientSet, String> {
    let (coeffs, maxdeg) = match text.rsplit_once(';') {
        Some((c, d)) => (c, d.trim()),
        None => return Err("budget must be '<coeff,...> ; <maxdeg>'".into()),
    };
    let mut elems = Vec::new();
    for item in coeffs.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let elem = base.parse_elem(item).map_err(|e| format!("coefficient '{item}': {e}"))?;
        elems.push(elem);
    }
    let maxdeg: usize = maxdeg.parse().map_err(|_| format!("invalid max degree '{maxdeg}'"))?;
    CoefficientSet::new(elems, maxdeg).map_err(|e| e.to_string())
}

pub fn parse_scenario(name: &str, text: &str) -> Result<Scenario, ScenarioError> {
    let mut base: Option<BaseField> = None;
    let mut chain: Option<ValuationChain> = None;
    let mut budget: Option<CoefficientSet> = None;
    let mut queries: Vec<Query> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        let args: Vec<&str> = if rest.is_empty() {
            vec![]
        } else {
            rest.split(';').map(str::trim).collect()
        };

        let need_base = |b: &Option<BaseField>| {
            b.ok_or_else(|| ScenarioError::at(lineno, "a 'field' directive must come first"))
        };
        let poly_arg = |b: &BaseField, s: &str| {
            Poly::parse(*b, s).map_err(|e| ScenarioError::at(lineno, format!("'{s}': {e}")))
        };
        let index_arg = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| ScenarioError::at(lineno, format!("invalid step index '{s}'")))
        };
        let arity = |n: usize| -> Result<(), ScenarioError> {
            if args.len() == n {
                Ok(())
            } else {
                Err(ScenarioError::at(
                    lineno,
                    format!("'{keyword}' expects {n} argument(s), got {}", args.len()),
                ))
            }
        };

        match keyword {
            "field" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(ScenarioError::at(lineno, "usage: field <padic|ratfunc> <prime>"));
                }
                let p: u64 = parts[1]
                    .parse()
                    .map_err(|_| ScenarioError::at(lineno, format!("invalid prime '{}'", parts[1])))?;
                let b = match parts[0] {
                    "padic" => BaseField::padic(p),
                    "ratfunc" => BaseField::rational_functions(p),
                    other => {
                        return Err(ScenarioError::at(
                            lineno,
                            format!("unknown field kind '{other}' (expected padic or ratfunc)"),
                        ))
                    }
                }
                .map_err(|e| ScenarioError::at(lineno, e.to_string()))?;
                base = Some(b);
            }
            "step" => {
                arity(2)?;
                let b = need_base(&base)?;
                let key = poly_arg(&b, args[0])?;
                let gamma = Value::parse(args[1])
                    .map_err(|e| ScenarioError::at(lineno, format!("'{}': {e}", args[1])))?;
                chain = Some(match chain.take() {
                    None => {
                        if key != Poly::x(b) {
                            return Err(ScenarioError::at(
                                lineno,
                                "the first step must assign a value to x (the Gauss step)",
                            ));
                        }
                        ValuationChain::gauss(b, gamma)
                            .map_err(|e| ScenarioError::at(lineno, e.to_string()))?
                    }
                    Some(existing) => existing
                        .augment(key, gamma)
                        .map_err(|e| ScenarioError::at(lineno, e.to_string()))?,
                });
            }
            "budget" => {
                let b = need_base(&base)?;
                budget = Some(
                    parse_budget_spec(&b, rest)
                        .map_err(|e| ScenarioError::at(lineno, e))?,
                );
            }
            "eval" => {
                arity(1)?;
                let b = need_base(&base)?;
                queries.push(Query::Eval { f: poly_arg(&b, args[0])? });
            }
            "expand" => {
                arity(2)?;
                let b = need_base(&base)?;
                queries.push(Query::Expand { q: poly_arg(&b, args[0])?, f: poly_arg(&b, args[1])? });
            }
            "epsilon" => {
                arity(1)?;
                let b = need_base(&base)?;
                queries.push(Query::Epsilon { p: poly_arg(&b, args[0])? });
            }
            "check-akp" => {
                arity(1)?;
                queries.push(Query::CheckAkp { index: index_arg(args[0])? });
            }
            "check-mlv" => {
                arity(1)?;
                let b = need_base(&base)?;
                queries.push(Query::CheckMlv { q: poly_arg(&b, args[0])? });
            }
            "successor" => {
                arity(1)?;
                queries.push(Query::Successor { index: index_arg(args[0])? });
            }
            "depth" => {
                arity(1)?;
                let b = need_base(&base)?;
                queries.push(Query::Depth { f: poly_arg(&b, args[0])? });
            }
            "refute" => {
                arity(1)?;
                let b = need_base(&base)?;
                queries.push(Query::Refute { q: poly_arg(&b, args[0])? });
            }
            "oracle-compare" => {
                arity(2)?;
                let b = need_base(&base)?;
                queries.push(Query::OracleCompare {
                    a: poly_arg(&b, args[0])?,
                    b: poly_arg(&b, args[1])?,
                });
            }
            other => {
                return Err(ScenarioError::at(lineno, format!("unknown directive '{other}'")));
            }
        }
    }

    let base = base.ok_or(ScenarioError { line: None, message: "missing 'field' directive".into() })?;
    let chain = chain.ok_or(ScenarioError {
        line: None,
        message: "missing 'step' directives (at least the Gauss step is required)".into(),
    })?;
    let budget = budget.unwrap_or_else(|| CoefficientSet::default_for(&base));
    Ok(Scenario { name: name.to_string(), base, chain, budget, queries })
}
