//! Structured suite reports.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use yangian::{CheckReport, Element, Operator, Yangian};

use crate::params::Params;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Outside a size guard or the algebras the suite applies to.
    Skipped,
    /// The computation itself failed; carries a reason, not a counterexample.
    Error,
}

/// The grammar a counterexample value parses in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grammar {
    Element,
    Operator,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub location: String,
    pub value: String,
    pub grammar: Grammar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub anchor: String,
    pub params: Params,
    pub status: Status,
    pub scope: String,
    pub items_checked: usize,
    pub counterexample: Option<Counterexample>,
    pub reason: Option<String>,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn from_check(suite: &str, anchor: &str, params: Params, check: CheckReport, wall_time_ms: u64) -> Self {
        let (status, counterexample, reason) = match check.counterexample {
            None if check.passed => (Status::Pass, None, None),
            None => (Status::Error, None, Some("check failed without a counterexample".into())),
            Some(c) => match classify(&params, &c.value) {
                Some(grammar) => (Status::Fail, Some(Counterexample { location: c.location, value: c.value, grammar }), None),
                None => (Status::Error, None, Some(format!("failure payload at {} does not parse: {}", c.location, c.value))),
            },
        };
        Self {
            suite: suite.into(),
            anchor: anchor.into(),
            params,
            status,
            scope: check.scope,
            items_checked: check.items_checked,
            counterexample,
            reason,
            wall_time_ms,
        }
    }

    pub fn without_check(suite: &str, anchor: &str, params: Params, status: Status, reason: String, wall_time_ms: u64) -> Self {
        Self {
            suite: suite.into(),
            anchor: anchor.into(),
            params,
            status,
            scope: String::new(),
            items_checked: 0,
            counterexample: None,
            reason: Some(reason),
            wall_time_ms,
        }
    }

    /// One-line summary for terminals.
    pub fn summary(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
            Status::Error => "ERROR",
        };
        let mut line = format!("{status} {} {} [{} items] {}", self.suite, self.params.dims_label(), self.items_checked, self.scope);
        if let Some(c) = &self.counterexample {
            line.push_str(&format!(" | at {}: {}", c.location, first_line(&c.value)));
        }
        if let Some(r) = &self.reason {
            line.push_str(&format!(" | {r}"));
        }
        line
    }

    /// The report as JSON with the wall time zeroed, for reproducibility
    /// comparisons.
    pub fn canonical_json(&self) -> String {
        let mut copy = self.clone();
        copy.wall_time_ms = 0;
        serde_json::to_string(&copy).expect("reports serialize")
    }
}

fn first_line(s: &str) -> String {
    let mut lines = s.lines();
    let head = lines.next().unwrap_or_default().to_string();
    if lines.next().is_some() {
        format!("{head} …")
    } else {
        head
    }
}

/// Operator dumps start with the `M N legs` header; anything else must be
/// an element of the suite's algebra.
fn classify(params: &Params, value: &str) -> Option<Grammar> {
    if Operator::<BigRational>::parse_dump(value).is_ok() {
        return Some(Grammar::Operator);
    }
    let alg = Yangian::<BigRational>::new(params.m, params.n).ok()?;
    Element::parse(&alg, value).ok().map(|_| Grammar::Element)
}
