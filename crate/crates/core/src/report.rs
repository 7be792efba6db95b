//! JSON views of run and theorem reports. Field order is fixed by the view
//! structs so output is byte-stable across runs.

use serde::Serialize;

use crate::reduce::{Equivalence, SuccessorReport};
use crate::storage::{Aggregate, CheckSummary, MacroStep, RunReport, Verdict};
use crate::syntax::pretty_sugared;
use crate::term::{Family, Term};
use crate::theorem::{Check, Outcome, TheoremReport};

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Lower => "lower",
        Family::Upper => "upper",
    }
}

#[derive(Serialize)]
pub struct StepView {
    pub u: String,
    pub beta_steps: usize,
    pub v: String,
    pub transform: Option<String>,
}

impl From<&MacroStep> for StepView {
    fn from(s: &MacroStep) -> Self {
        StepView {
            u: pretty_sugared(&s.u),
            beta_steps: s.beta_steps,
            v: pretty_sugared(&s.v),
            transform: s.transform.map(|t| format!("{t:?}")),
        }
    }
}

#[derive(Serialize)]
pub struct RunView {
    pub family: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub successor: Option<String>,
    pub n: usize,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<Vec<StepView>>,
}

pub fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Success { .. } => "success",
        Verdict::Fail { .. } => "fail",
        Verdict::FuelExhausted { .. } => "fuel_exhausted",
    }
}

impl RunView {
    pub fn new(r: &RunReport, trace: bool) -> Self {
        let reason = match &r.verdict {
            Verdict::Fail { reason, .. } => Some(reason.to_string()),
            Verdict::FuelExhausted { stage } => Some(stage.to_string()),
            Verdict::Success { .. } => None,
        };
        RunView {
            family: family_name(r.family),
            successor: r.successor.as_ref().map(pretty_sugared),
            n: r.n,
            verdict: verdict_name(&r.verdict),
            reason,
            tau: r.verdict.tau().map(pretty_sugared),
            steps: trace.then(|| r.trace.iter().map(StepView::from).collect()),
        }
    }
}

#[derive(Serialize)]
pub struct AggregateView {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl From<&Aggregate> for AggregateView {
    fn from(a: &Aggregate) -> Self {
        match a {
            Aggregate::AllPass => AggregateView {
                verdict: "all_pass",
                n: None,
                reason: None,
            },
            Aggregate::FirstFailureAt { n, reason } => AggregateView {
                verdict: "first_failure",
                n: Some(*n),
                reason: Some(reason.to_string()),
            },
            Aggregate::Inconclusive { n, stage } => AggregateView {
                verdict: "inconclusive",
                n: Some(*n),
                reason: Some(stage.to_string()),
            },
        }
    }
}

#[derive(Serialize)]
pub struct SummaryView {
    pub family: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub successor: Option<String>,
    pub n_max: usize,
    pub aggregate: AggregateView,
    pub runs: Vec<RunView>,
}

impl SummaryView {
    pub fn new(s: &CheckSummary, trace: bool) -> Self {
        SummaryView {
            family: family_name(s.family),
            successor: s.successor.as_ref().map(pretty_sugared),
            n_max: s.n_max,
            aggregate: (&s.aggregate).into(),
            runs: s.runs.iter().map(|r| RunView::new(r, trace)).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct CheckView<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub name: &'a str,
    pub outcome: &'static str,
    pub detail: &'a str,
}

pub fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::Inconclusive => "inconclusive",
    }
}

impl<'a> From<&'a Check> for CheckView<'a> {
    fn from(c: &'a Check) -> Self {
        CheckView {
            n: c.n,
            name: &c.name,
            outcome: outcome_name(c.outcome),
            detail: &c.detail,
        }
    }
}

#[derive(Serialize)]
pub struct TheoremView<'a> {
    pub theorem: &'a str,
    pub verdict: &'static str,
    pub checks: Vec<CheckView<'a>>,
}

impl<'a> From<&'a TheoremReport> for TheoremView<'a> {
    fn from(r: &'a TheoremReport) -> Self {
        TheoremView {
            theorem: &r.theorem,
            verdict: outcome_name(r.outcome()),
            checks: r.checks.iter().map(CheckView::from).collect(),
        }
    }
}

pub fn equivalence_name(e: Equivalence) -> &'static str {
    match e {
        Equivalence::Equal => "equal",
        Equivalence::Distinct => "distinct",
        Equivalence::Unknown => "unknown",
    }
}

#[derive(Serialize)]
pub struct SuccessorView {
    pub successor: String,
    pub k_max: usize,
    pub verdict: &'static str,
    pub outcomes: Vec<&'static str>,
}

impl SuccessorView {
    pub fn new(successor: &Term, r: &SuccessorReport) -> Self {
        let verdict = match r.exit_code() {
            0 => "pass",
            1 => "fail",
            _ => "inconclusive",
        };
        SuccessorView {
            successor: pretty_sugared(successor),
            k_max: r.k_max,
            verdict,
            outcomes: r.outcomes.iter().map(|e| equivalence_name(*e)).collect(),
        }
    }
}

/// Compact single-line JSON.
pub fn to_json<T: Serialize>(view: &T) -> String {
    serde_json::to_string(view).expect("views serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{s1, t1};
    use crate::reduce::Limits;
    use crate::storage::run_check;

    #[test]
    fn run_json_key_order() {
        let r = run_check(&t1(&s1()), Family::Lower, None, 2, &Limits::default()).unwrap();
        let j = to_json(&RunView::new(&r, false));
        assert_eq!(
            j,
            r#"{"family":"lower","n":2,"verdict":"success","tau":"(\\n f x. f (n f x)) ((\\n f x. f (n f x)) #0)"}"#
        );
        let j = to_json(&RunView::new(&r, true));
        assert!(j.contains(r#""steps":[{"u":"#));
        assert!(j.ends_with(r#""transform":"Final"}]}"#), "{j}");
    }
}
