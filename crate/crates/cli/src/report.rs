//! Query execution and report rendering.
//!
//! The machine format is a stable line protocol so reports can be
//! golden-file tested byte for byte: every exact value renders as a
//! reduced fraction, field order is fixed, and nothing depends on hash
//! iteration order. The human format carries the same content with
//! friendlier layout.

use maclane::keypoly::{self, KeyVerdict};
use maclane::oracle::{self, CoefficientSet, DividesOutcome};
use maclane::suite::CheckOutcome;
use maclane::{BaseField, ValuationChain};

use crate::scenario::{Query, Scenario, ScenarioError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    CheckFailed,
}

pub struct QueryRecord {
    pub kind: &'static str,
    pub inputs: Vec<(&'static str, String)>,
    pub results: Vec<(String, String)>,
    pub status: Status,
}

pub enum Body {
    Queries(Vec<QueryRecord>),
    Checks(Vec<CheckOutcome>),
}

pub struct Report {
    pub scenario: String,
    pub base: BaseField,
    pub steps: Vec<(String, String)>,
    pub budget_line: String,
    pub body: Body,
}

impl Report {
    pub fn failed(&self) -> bool {
        match &self.body {
            Body::Queries(records) => records.iter().any(|r| r.status == Status::CheckFailed),
            Body::Checks(checks) => checks.iter().any(|c| !c.passed),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed() {
            1
        } else {
            0
        }
    }

    fn field_line(&self) -> String {
        match self.base {
            BaseField::PadicRationals { p } => format!("padic p={p}"),
            BaseField::RationalFunctions { p, var } => format!("ratfunc p={p} var={var}"),
        }
    }

    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        out.push_str("maclane-report 1\n");
        out.push_str(&format!("scenario: {}\n", self.scenario));
        out.push_str(&format!("field: {}\n", self.field_line()));
        out.push_str(&format!("chain: {} steps\n", self.steps.len()));
        for (i, (key, gamma)) in self.steps.iter().enumerate() {
            out.push_str(&format!("step: {i} ; key={key} ; gamma={gamma}\n"));
        }
        out.push_str(&format!("budget: {}\n", self.budget_line));
        match &self.body {
            Body::Queries(records) => {
                for (i, record) in records.iter().enumerate() {
                    let inputs: Vec<String> =
                        record.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    out.push_str(&format!(
                        "query: {} ; {} ; {}\n",
                        i + 1,
                        record.kind,
                        inputs.join(" ; ")
                    ));
                    for (k, v) in &record.results {
                        out.push_str(&format!("result: {k}={v}\n"));
                    }
                    let status = match record.status {
                        Status::Ok => "ok",
                        Status::CheckFailed => "check-failed",
                    };
                    out.push_str(&format!("status: {status}\n"));
                }
            }
            Body::Checks(checks) => {
                for check in checks {
                    let status = if check.passed { "pass" } else { "fail" };
                    out.push_str(&format!("check: {} ; {} ; {}\n", check.name, status, check.detail));
                }
            }
        }
        out.push_str(&format!("end: {}\n", if self.failed() { "failed" } else { "ok" }));
        out
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("scenario {}\n", self.scenario));
        out.push_str(&format!("field   {}\n", self.base));
        for (i, (key, gamma)) in self.steps.iter().enumerate() {
            out.push_str(&format!("step {i}  {key} -> {gamma}\n"));
        }
        out.push_str(&format!("budget  {}\n\n", self.budget_line));
        match &self.body {
            Body::Queries(records) => {
                for (i, record) in records.iter().enumerate() {
                    let inputs: Vec<String> =
                        record.inputs.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                    out.push_str(&format!("[{}] {} with {}\n", i + 1, record.kind, inputs.join(", ")));
                    for (k, v) in &record.results {
                        out.push_str(&format!("    {k}: {v}\n"));
                    }
                    if record.status == Status::CheckFailed {
                        out.push_str("    ** check failed **\n");
                    }
                }
            }
            Body::Checks(checks) => {
                for check in checks {
                    let status = if check.passed { "PASS" } else { "FAIL" };
                    out.push_str(&format!("[{status}] {}: {}\n", check.name, check.detail));
                }
            }
        }
        out.push_str(&format!(
            "\n{}\n",
            if self.failed() { "FAILED" } else { "all queries ok" }
        ));
        out
    }
}

pub fn budget_line(budget: &CoefficientSet) -> String {
    let elems: Vec<String> = budget.elems().iter().map(|e| e.to_string()).collect();
    format!("{} ; maxdeg={}", elems.join(","), budget.max_degree())
}

fn chain_steps(chain: &ValuationChain) -> Vec<(String, String)> {
    chain
        .steps()
        .iter()
        .map(|s| (s.key().to_string(), s.gamma().to_string()))
        .collect()
}

/// Execute every query in order. Query-level failures of the *inputs*
/// (for example epsilon of a constant) surface as scenario errors with
/// exit code 2; negative verdicts (refutations, failed checks,
/// disagreements) mark the record as check-failed, exit code 1.
pub fn run_scenario(scenario: &Scenario, with_oracle: bool) -> Result<Report, ScenarioError> {
    let chain = &scenario.chain;
    let budget = &scenario.budget;
    let mut records = Vec::new();
    for query in &scenario.queries {
        let record = run_query(chain, budget, query, with_oracle)
            .map_err(|e| ScenarioError { line: None, message: e.to_string() })?;
        records.push(record);
    }
    Ok(Report {
        scenario: scenario.name.clone(),
        base: scenario.base,
        steps: chain_steps(chain),
        budget_line: budget_line(budget),
        body: Body::Queries(records),
    })
}

fn run_query(
    chain: &ValuationChain,
    budget: &CoefficientSet,
    query: &Query,
    with_oracle: bool,
) -> maclane::Result<QueryRecord> {
    Ok(match query {
        Query::Eval { f } => QueryRecord {
            kind: "eval",
            inputs: vec![("f", f.to_string())],
            results: vec![("value".into(), chain.evaluate(f).to_string())],
            status: Status::Ok,
        },
        Query::Expand { q, f } => {
            let view = chain.expansion_view(q, f)?;
            let coeffs: Vec<String> =
                view.expansion.coefficients().iter().map(|c| c.to_string()).collect();
            let values: Vec<String> = view.term_values.iter().map(|v| v.to_string()).collect();
            QueryRecord {
                kind: "expand",
                inputs: vec![("Q", q.to_string()), ("f", f.to_string())],
                results: vec![
                    ("muQ".into(), view.min_value.to_string()),
                    ("S".into(), view.set_string()),
                    ("delta".into(), view.delta.to_string()),
                    ("InQ".into(), view.initial_part.to_string()),
                    ("coeffs".into(), format!("[{}]", coeffs.join(", "))),
                    ("values".into(), format!("[{}]", values.join(", "))),
                ],
                status: Status::Ok,
            }
        }
        Query::Epsilon { p } => {
            let report = keypoly::epsilon(chain, p)?;
            let mut results = vec![
                ("epsilon".into(), report.epsilon.to_string()),
                (
                    "I".into(),
                    format!(
                        "{{{}}}",
                        report.attaining.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(",")
                    ),
                ),
                ("b".into(), report.b_min.to_string()),
            ];
            let mut status = Status::Ok;
            if with_oracle {
                let brute = oracle::epsilon_bruteforce(chain, p)?;
                let agrees = brute == report;
                results.push(("oracle-agrees".into(), if agrees { "yes" } else { "no" }.into()));
                if !agrees {
                    status = Status::CheckFailed;
                }
            }
            QueryRecord { kind: "epsilon", inputs: vec![("P", p.to_string())], results, status }
        }
        Query::CheckAkp { index } => {
            let cert = keypoly::certify_abstract(chain, *index)?;
            let ok = cert.verdict == KeyVerdict::Certified;
            QueryRecord {
                kind: "check-akp",
                inputs: vec![("i", index.to_string())],
                results: vec![("certificate".into(), cert.to_string())],
                status: if ok { Status::Ok } else { Status::CheckFailed },
            }
        }
        Query::CheckMlv { q } => {
            let verdict = keypoly::check_mlv_last(chain, q, budget)?;
            QueryRecord {
                kind: "check-mlv",
                inputs: vec![("Q", q.to_string())],
                results: vec![("verdict".into(), verdict.describe())],
                status: if verdict.accepted() { Status::Ok } else { Status::CheckFailed },
            }
        }
        Query::Successor { index } => {
            let minimal = keypoly::is_immediate_successor(chain, *index, budget)?;
            QueryRecord {
                kind: "successor",
                inputs: vec![("i", index.to_string())],
                results: vec![(
                    "immediate-successor".into(),
                    if minimal { "yes (budget-relative)".into() } else { "no".to_string() },
                )],
                status: if minimal { Status::Ok } else { Status::CheckFailed },
            }
        }
        Query::Depth { f } => QueryRecord {
            kind: "depth",
            inputs: vec![("f", f.to_string())],
            results: vec![("depth".into(), keypoly::truncation_depth(chain, f).to_string())],
            status: Status::Ok,
        },
        Query::Refute { q } => {
            let cert = keypoly::refute_abstract(chain, q, budget)?;
            let refuted = matches!(cert.verdict, KeyVerdict::Refuted { .. });
            let mut results = vec![("certificate".into(), cert.to_string())];
            if let KeyVerdict::Refuted { counterexample } = &cert.verdict {
                results.push(("counterexample".into(), counterexample.to_string()));
            }
            QueryRecord {
                kind: "refute",
                inputs: vec![("Q", q.to_string())],
                results,
                status: if refuted { Status::CheckFailed } else { Status::Ok },
            }
        }
        Query::OracleCompare { a, b } => {
            let brute = oracle::graded_divides_bruteforce(chain, a, b, budget)?;
            let structural = if a == chain.last_key() {
                Some(chain.divides_last_key(b)?)
            } else {
                None
            };
            let mut results = vec![("oracle".into(), brute.to_string())];
            let mut status = Status::Ok;
            if let Some(structural) = structural {
                results.push((
                    "structural".into(),
                    if structural { "divides" } else { "does not divide" }.into(),
                ));
                let agrees = match &brute {
                    DividesOutcome::Divides { .. } => structural,
                    DividesOutcome::NotDivides => !structural,
                    DividesOutcome::Unknown => true,
                };
                results.push(("agree".into(), if agrees { "yes" } else { "no" }.into()));
                if !agrees {
                    status = Status::CheckFailed;
                }
            }
            QueryRecord {
                kind: "oracle-compare",
                inputs: vec![("A", a.to_string()), ("B", b.to_string())],
                results,
                status,
            }
        }
    })
}

/// Build the demo report: the named chain with the full property suite.
pub fn run_demo(
    name: &str,
    budget_override: Option<CoefficientSet>,
) -> Result<Report, ScenarioError> {
    let chain = maclane::demo::demo_chain(name)
        .map_err(|e| ScenarioError { line: None, message: e.to_string() })?;
    let budget = budget_override.unwrap_or_else(|| CoefficientSet::default_for(&chain.base()));
    let checks = maclane::suite::run_property_suite(&chain, &budget, 120, 0x6d61636c616e65);
    Ok(Report {
        scenario: format!("demo:{name}"),
        base: chain.base(),
        steps: chain_steps(&chain),
        budget_line: budget_line(&budget),
        body: Body::Checks(checks),
    })
}
