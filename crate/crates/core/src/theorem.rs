//! Instance-level checks relating the two families of runs.
//!
//! * `σ` / `σ̂` replace upper constants by concrete (guarded) numerals.
//! * Property (P): every stored `X` constant is applied to its own `a` and
//!   `b`, and no enclosing binder captures a name of `a` or `b`.
//! * `Δ` maps lower terms to upper terms; it is invertible on (P) terms.
//!
//! The verifiers run both families for every `n` up to a bound and report
//! one [`Check`] per observation instead of a single boolean.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::builtins::{s1, s2, t3};
use crate::reduce::{beta_equiv, decompose_hnf, head_reduce, head_step, Equivalence, Limits};
use crate::storage::{
    check_operator, run_check, Aggregate, CheckError, FailReason, MacroStep, RunReport, Verdict, PROBE,
};
use crate::term::{
    alpha_eq, free_names, is_closed_pure, mk_church, occurs_free, replace_constants, Constant, Family, Name,
    Term,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SigmaError {
    #[error("term contains lower-family constants")]
    LowerConstant,
    #[error("guard variable `{0}` occurs free in the term or the successor")]
    GuardNotFresh(String),
}

/// `σ`: every `X_k` (seed or stored) becomes `(S)^k 0`.
pub fn sigma_subst(t: &Term, successor: &Term) -> Result<Term, SigmaError> {
    if t.has_family(Family::Lower) {
        return Err(SigmaError::LowerConstant);
    }
    let free = free_names(successor);
    Ok(replace_constants(t, &free, &mut |c| {
        Some(Term::iterate(successor, c.level(), mk_church(0)))
    }))
}

/// `(λx body) y` with `x` not free in `body` and distinct from `y`.
pub fn guarded(body: &Term, y: &str) -> Term {
    let mut avoid = free_names(body);
    avoid.insert(Name::from(y));
    let x = if avoid.contains("x") {
        crate::term::fresh_name("x", &avoid)
    } else {
        Name::from("x")
    };
    Term::app(Term::Lam(x, Box::new(body.clone())), Term::var(y))
}

/// `σ̂`: every `X_k` becomes `(Ŝ)^k 0̂` with `Ŝ = (λx S) y` and
/// `0̂ = (λx 0) y`.
pub fn sigma_hat_subst(t: &Term, successor: &Term, y: &str) -> Result<Term, SigmaError> {
    if t.has_family(Family::Lower) {
        return Err(SigmaError::LowerConstant);
    }
    if occurs_free(t, y) || occurs_free(successor, y) {
        return Err(SigmaError::GuardNotFresh(y.to_string()));
    }
    let s_hat = guarded(successor, y);
    let zero_hat = guarded(&mk_church(0), y);
    let mut free = free_names(successor);
    free.insert(Name::from(y));
    Ok(replace_constants(t, &free, &mut |c| {
        Some(Term::iterate(&s_hat, c.level(), zero_hat.clone()))
    }))
}

/// One edge from a term to a subterm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PathStep {
    Body,
    Function,
    Argument,
    Payload(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PViolationKind {
    NotAppliedToAB,
    BoundNameInAB,
    PayloadViolation,
}

/// Where and how a term fails property (P). `path` leads to the offending
/// constant; for `PayloadViolation`, `inner` holds the violation found in
/// its payload.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PViolation {
    pub path: Vec<PathStep>,
    pub kind: PViolationKind,
    pub inner: Option<Box<PViolation>>,
}

impl fmt::Display for PViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at ", self.kind)?;
        if self.path.is_empty() {
            write!(f, "root")?;
        }
        for (i, s) in self.path.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            match s {
                PathStep::Body => write!(f, "body")?,
                PathStep::Function => write!(f, "fun")?,
                PathStep::Argument => write!(f, "arg")?,
                PathStep::Payload(k) => write!(f, "payload{k}")?,
            }
        }
        if let Some(inner) = &self.inner {
            write!(f, " ({inner})")?;
        }
        Ok(())
    }
}

pub fn satisfies_p(t: &Term) -> Result<(), PViolation> {
    check_p(t, &mut Vec::new(), &mut Vec::new())
}

fn check_p(t: &Term, bound: &mut Vec<Name>, path: &mut Vec<PathStep>) -> Result<(), PViolation> {
    match t {
        Term::Var(_) => Ok(()),
        Term::Lam(x, b) => {
            bound.push(x.clone());
            path.push(PathStep::Body);
            let r = check_p(b, bound, path);
            path.pop();
            bound.pop();
            r
        }
        Term::App(..) | Term::Const(_) => {
            let (head, args) = t.spine();
            let k = args.len();
            let depth = path.len();
            path.extend(std::iter::repeat_n(PathStep::Function, k));
            let head_result = match head {
                Term::Const(c) => check_constant(c, &args, bound, path),
                other => check_p(other, bound, path),
            };
            path.truncate(depth);
            head_result?;
            for (i, a) in args.iter().enumerate() {
                path.extend(std::iter::repeat_n(PathStep::Function, k - 1 - i));
                path.push(PathStep::Argument);
                let r = check_p(a, bound, path);
                path.truncate(depth);
                r?;
            }
            Ok(())
        }
    }
}

fn check_constant(
    c: &Constant,
    args: &[&Term],
    bound: &mut Vec<Name>,
    path: &mut Vec<PathStep>,
) -> Result<(), PViolation> {
    let here = |kind| PViolation {
        path: path.clone(),
        kind,
        inner: None,
    };
    if c.family() == Family::Upper {
        if let Some((a, b)) = c.stored_ab() {
            let applied = matches!(args, [x, y, ..] if alpha_eq(x, a) && alpha_eq(y, b));
            if !applied {
                return Err(here(PViolationKind::NotAppliedToAB));
            }
            let mut names: BTreeSet<Name> = free_names(a);
            names.extend(free_names(b));
            if names.iter().any(|n| bound.contains(n)) {
                return Err(here(PViolationKind::BoundNameInAB));
            }
        }
    }
    for (i, p) in c.payload().iter().enumerate() {
        let depth = path.len();
        path.push(PathStep::Payload(i));
        let r = check_p(p, bound, path);
        path.truncate(depth);
        if let Err(inner) = r {
            return Err(PViolation {
                path: path.clone(),
                kind: PViolationKind::PayloadViolation,
                inner: Some(Box::new(inner)),
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeltaError {
    #[error("input contains {0}-family constants")]
    WrongFamily(Family),
    #[error("input does not satisfy (P): {0}")]
    Violation(PViolation),
}

/// `Δ`: `x_n ↦ X_n`, `x_{k,a,b,c̄} ↦ (X_{k,Δa,Δb,Δc̄}) Δa Δb`.
pub fn delta_forward(t: &Term) -> Result<Term, DeltaError> {
    match t {
        Term::Var(_) => Ok(t.clone()),
        Term::Lam(x, b) => Ok(Term::Lam(x.clone(), Box::new(delta_forward(b)?))),
        Term::App(f, a) => Ok(Term::app(delta_forward(f)?, delta_forward(a)?)),
        Term::Const(c) => {
            if c.family() == Family::Upper {
                return Err(DeltaError::WrongFamily(Family::Upper));
            }
            let mapped = c.try_map_payload(delta_forward)?.with_family(Family::Upper);
            match mapped.stored_ab() {
                None => Ok(Term::Const(mapped)),
                Some((a, b)) => {
                    let (a, b) = (a.clone(), b.clone());
                    Ok(Term::apps(Term::Const(mapped), [a, b]))
                }
            }
        }
    }
}

/// The (P)-term's preimage under `Δ`.
pub fn delta_inverse(t: &Term) -> Result<Term, DeltaError> {
    if t.has_family(Family::Lower) {
        return Err(DeltaError::WrongFamily(Family::Lower));
    }
    satisfies_p(t).map_err(DeltaError::Violation)?;
    Ok(inverse_rec(t))
}

fn inverse_rec(t: &Term) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::Lam(x, b) => Term::Lam(x.clone(), Box::new(inverse_rec(b))),
        Term::App(..) | Term::Const(_) => {
            let (head, args) = t.spine();
            let (head, rest) = match head {
                Term::Const(c) => {
                    let lowered = c.map_payload(inverse_rec).with_family(Family::Lower);
                    let skip = if c.is_stored() { 2 } else { 0 };
                    (Term::Const(lowered), &args[skip..])
                }
                other => (inverse_rec(other), &args[..]),
            };
            Term::apps(head, rest.iter().map(|a| inverse_rec(a)))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub n: Option<usize>,
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

impl Check {
    fn new(n: Option<usize>, name: &str, outcome: Outcome, detail: impl Into<String>) -> Self {
        Check {
            n,
            name: name.to_string(),
            outcome,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub checks: Vec<Check>,
}

impl TheoremReport {
    pub fn outcome(&self) -> Outcome {
        let has = |o| self.checks.iter().any(|c| c.outcome == o);
        if has(Outcome::Fail) {
            Outcome::Fail
        } else if has(Outcome::Inconclusive) {
            Outcome::Inconclusive
        } else {
            Outcome::Pass
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.outcome() {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Inconclusive => 2,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.outcome != Outcome::Pass)
    }
}

fn pass_if(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn equivalence_outcome(e: Equivalence) -> Outcome {
    match e {
        Equivalence::Equal => Outcome::Pass,
        Equivalence::Distinct => Outcome::Fail,
        Equivalence::Unknown => Outcome::Inconclusive,
    }
}

fn verdict_outcome(v: &Verdict) -> Outcome {
    match v {
        Verdict::Success { .. } => Outcome::Pass,
        Verdict::Fail { .. } => Outcome::Fail,
        Verdict::FuelExhausted { .. } => Outcome::Inconclusive,
    }
}

fn describe(v: &Verdict) -> String {
    match v {
        Verdict::Success { tau } => format!("success, tau = {}", crate::syntax::pretty_sugared(tau)),
        Verdict::Fail { reason, .. } => format!("fail: {reason}"),
        Verdict::FuelExhausted { stage } => format!("fuel exhausted ({stage})"),
    }
}

/// Where, if anywhere, Lemma 1 is contradicted along one recorded
/// reduction: `term` satisfied (P) earlier but the term `offset` head
/// steps after `u` does not.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma1Violation {
    pub step: usize,
    pub offset: usize,
    pub violation: PViolation,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma1Report {
    pub checked_terms: usize,
    pub satisfying_terms: usize,
    pub violation: Option<Lemma1Violation>,
    /// Index of a step whose replay did not end at the recorded `v`.
    pub replay_mismatch: Option<usize>,
}

impl Lemma1Report {
    pub fn passed(&self) -> bool {
        self.violation.is_none() && self.replay_mismatch.is_none()
    }
}

/// Replays every recorded head reduction one β-step at a time and checks
/// that once an intermediate term satisfies (P), every later one does.
pub fn verify_lemma1_along(trace: &[MacroStep]) -> Lemma1Report {
    let mut report = Lemma1Report {
        checked_terms: 0,
        satisfying_terms: 0,
        violation: None,
        replay_mismatch: None,
    };
    for (i, step) in trace.iter().enumerate() {
        let mut cur = step.u.clone();
        let mut seen_p = false;
        for offset in 0..=step.beta_steps {
            if !matches!(cur, Term::Lam(..)) {
                report.checked_terms += 1;
                match satisfies_p(&cur) {
                    Ok(()) => {
                        report.satisfying_terms += 1;
                        seen_p = true;
                    }
                    Err(violation) if seen_p => {
                        report.violation.get_or_insert(Lemma1Violation {
                            step: i,
                            offset,
                            violation,
                        });
                    }
                    Err(_) => {}
                }
            }
            if offset < step.beta_steps {
                match head_step(&cur) {
                    Some(next) => cur = next,
                    None => break,
                }
            }
        }
        if !alpha_eq(&cur, &step.v) && report.replay_mismatch.is_none() {
            report.replay_mismatch = Some(i);
        }
    }
    report
}

/// Checks (P) on the first `u` and every `v` of a run; returns the index
/// of the first failing step (0 is `u`, `i + 1` is the `i`-th `v`).
pub fn check_p_along_run(report: &RunReport) -> Result<(), (usize, PViolation)> {
    if let Some(first) = report.trace.first() {
        satisfies_p(&first.u).map_err(|v| (0, v))?;
    }
    for (i, step) in report.trace.iter().enumerate() {
        satisfies_p(&step.v).map_err(|v| (i + 1, v))?;
    }
    Ok(())
}

fn require_closed(t: &Term, err: CheckError) -> Result<(), CheckError> {
    if is_closed_pure(t) {
        Ok(())
    } else {
        Err(err)
    }
}

fn collect_checks(n_max: usize, per_n: impl Fn(usize) -> Vec<Check> + Sync + Send) -> Vec<Check> {
    let per: Vec<Vec<Check>> = (0..=n_max).into_par_iter().map(per_n).collect();
    per.into_iter().flatten().collect()
}

/// For each `n`: if the x-run succeeds, the X-run with `S` must succeed
/// with the same τ, and `((T) (Ŝ)^n 0̂) f` must head-reduce to `(f) τ`.
pub fn verify_theorem1_instance(
    operator: &Term,
    successor: &Term,
    n_max: usize,
    limits: &Limits,
) -> Result<TheoremReport, CheckError> {
    require_closed(operator, CheckError::OperatorNotClosed)?;
    require_closed(successor, CheckError::SuccessorNotClosed)?;
    let checks = collect_checks(n_max, |n| theorem1_at(operator, successor, n, limits));
    Ok(TheoremReport {
        theorem: "theorem1".into(),
        checks,
    })
}

fn theorem1_at(operator: &Term, successor: &Term, n: usize, limits: &Limits) -> Vec<Check> {
    let some = Some(n);
    let lower = run_check(operator, Family::Lower, None, n, limits).expect("validated");
    let tau = match &lower.verdict {
        Verdict::Success { tau } => tau.clone(),
        Verdict::Fail { reason, .. } => {
            return vec![Check::new(
                some,
                "premise",
                Outcome::Pass,
                format!("vacuous: x-run fails ({reason})"),
            )]
        }
        Verdict::FuelExhausted { stage } => {
            return vec![Check::new(
                some,
                "premise",
                Outcome::Inconclusive,
                format!("x-run fuel exhausted ({stage})"),
            )]
        }
    };
    let mut checks = Vec::new();
    let upper = run_check(operator, Family::Upper, Some(successor), n, limits).expect("validated");
    checks.push(Check::new(
        some,
        "s-storage",
        verdict_outcome(&upper.verdict),
        describe(&upper.verdict),
    ));
    if let Verdict::Success { tau: delta } = &upper.verdict {
        checks.push(Check::new(
            some,
            "same-tau",
            pass_if(alpha_eq(delta, &tau)),
            "X-run tau vs x-run tau",
        ));
    }

    let mut avoid = free_names(operator);
    avoid.extend(free_names(successor));
    avoid.insert(Name::from(PROBE));
    let y = if avoid.contains("y") {
        crate::term::fresh_name("y", &avoid)
    } else {
        Name::from("y")
    };
    let seed = Term::seed(Family::Upper, n);
    let theta = sigma_hat_subst(&seed, successor, &y).expect("seed has no lower constants");
    let start = Term::apps(operator.clone(), [theta, Term::var(PROBE)]);
    match head_reduce(&start, limits) {
        Err(e) => checks.push(Check::new(
            some,
            "guarded-numeral",
            Outcome::Inconclusive,
            format!("head reduction out of fuel after {} steps", e.steps),
        )),
        Ok((v, _)) => {
            let d = decompose_hnf(&v).expect("hnf");
            match d.args.as_slice() {
                [t] if d.lambda_prefix.is_empty() && d.head.is_var(PROBE) => {
                    checks.push(Check::new(
                        some,
                        "guarded-numeral",
                        equivalence_outcome(beta_equiv(t, &mk_church(n), limits)),
                        format!("(f) {}", crate::syntax::pretty_sugared(t)),
                    ));
                    checks.push(Check::new(
                        some,
                        "guarded-same-tau",
                        pass_if(alpha_eq(t, &tau)),
                        "tau from (S^)^n 0^ vs x-run tau",
                    ));
                }
                _ => checks.push(Check::new(
                    some,
                    "guarded-numeral",
                    Outcome::Fail,
                    format!(
                        "head normal form is not (f) t: {}",
                        crate::syntax::pretty_sugared(&v)
                    ),
                )),
            }
        }
    }
    checks
}

/// For each `n`: the x-run and the X-run with `S1` agree on the verdict
/// and on τ, and `Δ` maps each x-run state onto the matching X-run state.
pub fn verify_theorem2_instance(
    operator: &Term,
    n_max: usize,
    limits: &Limits,
) -> Result<TheoremReport, CheckError> {
    require_closed(operator, CheckError::OperatorNotClosed)?;
    let succ = s1();
    let checks = collect_checks(n_max, |n| theorem2_at(operator, &succ, n, limits));
    Ok(TheoremReport {
        theorem: "theorem2".into(),
        checks,
    })
}

fn theorem2_at(operator: &Term, succ: &Term, n: usize, limits: &Limits) -> Vec<Check> {
    let some = Some(n);
    let lower = run_check(operator, Family::Lower, None, n, limits).expect("validated");
    let upper = run_check(operator, Family::Upper, Some(succ), n, limits).expect("validated");
    let fuel = |v: &Verdict| matches!(v, Verdict::FuelExhausted { .. });
    let mut checks = Vec::new();
    let detail = format!(
        "x-run {}; X-run {}",
        describe(&lower.verdict),
        describe(&upper.verdict)
    );
    let agree = if fuel(&lower.verdict) || fuel(&upper.verdict) {
        Outcome::Inconclusive
    } else {
        pass_if(lower.verdict.same_outcome(&upper.verdict))
    };
    checks.push(Check::new(some, "verdicts-agree", agree, detail));
    if let (Some(a), Some(b)) = (lower.verdict.tau(), upper.verdict.tau()) {
        let same = delta_forward(a).is_ok_and(|da| alpha_eq(&da, b));
        checks.push(Check::new(
            some,
            "tau-agree",
            pass_if(same),
            "Δ(x-run tau) vs X-run tau",
        ));
    }
    checks.push(delta_correspondence(&lower, &upper, limits));
    checks
}

fn delta_correspondence(lower: &RunReport, upper: &RunReport, limits: &Limits) -> Check {
    let n = Some(lower.n);
    let name = "delta-trace";
    for (i, (ls, us)) in lower.trace.iter().zip(&upper.trace).enumerate() {
        let (Ok(du), Ok(dv)) = (delta_forward(&ls.u), delta_forward(&ls.v)) else {
            return Check::new(
                n,
                name,
                Outcome::Fail,
                format!("step {i}: x-run term has X constants"),
            );
        };
        if !alpha_eq(&dv, &us.v) {
            return Check::new(n, name, Outcome::Fail, format!("step {i}: Δ(V') differs from V"));
        }
        match head_reduce(&du, limits) {
            Err(_) => return Check::new(n, name, Outcome::Inconclusive, format!("step {i}: out of fuel")),
            Ok((v, _)) if !alpha_eq(&v, &us.v) => {
                return Check::new(
                    n,
                    name,
                    Outcome::Fail,
                    format!("step {i}: Δ(U') does not reduce to V"),
                )
            }
            Ok(_) => {}
        }
    }
    let fuel = |r: &RunReport| matches!(r.verdict, Verdict::FuelExhausted { .. });
    if lower.trace.len() != upper.trace.len() {
        if fuel(lower) || fuel(upper) {
            return Check::new(n, name, Outcome::Inconclusive, "traces cut short by fuel");
        }
        return Check::new(
            n,
            name,
            Outcome::Fail,
            format!(
                "trace lengths differ: {} vs {}",
                lower.trace.len(),
                upper.trace.len()
            ),
        );
    }
    Check::new(
        n,
        name,
        Outcome::Pass,
        format!("{} steps correspond", lower.trace.len()),
    )
}

/// The builtin counterexample `T3` (at `S2`) stores under the X-rules with
/// `S2` for every `n ≤ n_max` but fails the x-run from `n = 1` on, with a
/// τ′ that still holds a level-0 stored x constant.
pub fn verify_theorem3(n_max: usize, limits: &Limits) -> TheoremReport {
    let succ = s2();
    let op = t3(&succ);
    let upper = check_operator(&op, Family::Upper, Some(&succ), n_max, limits).expect("builtins are closed");
    let lower = check_operator(&op, Family::Lower, None, n_max, limits).expect("builtins are closed");
    let mut checks = Vec::new();
    for (u, l) in upper.runs.iter().zip(&lower.runs) {
        let n = Some(u.n);
        checks.push(Check::new(
            n,
            "s2-storage",
            verdict_outcome(&u.verdict),
            describe(&u.verdict),
        ));
        if u.n == 0 {
            checks.push(Check::new(
                n,
                "x-run-at-zero",
                verdict_outcome(&l.verdict),
                describe(&l.verdict),
            ));
            continue;
        }
        checks.extend(lower_counterexample(l, &succ, limits));
    }
    let expected = if n_max >= 1 {
        Aggregate::FirstFailureAt {
            n: 1,
            reason: FailReason::TauNotClosed,
        }
    } else {
        Aggregate::AllPass
    };
    let outcome = match lower.aggregate {
        Aggregate::Inconclusive { .. } => Outcome::Inconclusive,
        a => pass_if(a == expected),
    };
    checks.push(Check::new(
        None,
        "x-run-aggregate",
        outcome,
        format!("{:?}", lower.aggregate),
    ));
    TheoremReport {
        theorem: "theorem3".into(),
        checks,
    }
}

fn lower_counterexample(l: &RunReport, succ: &Term, limits: &Limits) -> Vec<Check> {
    let n = Some(l.n);
    let tau = match &l.verdict {
        Verdict::FuelExhausted { stage } => {
            return vec![Check::new(
                n,
                "x-run-refuted",
                Outcome::Inconclusive,
                format!("fuel ({stage})"),
            )]
        }
        Verdict::Fail {
            reason: FailReason::TauNotClosed,
            tau: Some(tau),
        } => tau,
        other => return vec![Check::new(n, "x-run-refuted", Outcome::Fail, describe(other))],
    };
    let mut checks = vec![Check::new(
        n,
        "x-run-refuted",
        Outcome::Pass,
        "fail: TauNotClosed",
    )];
    let level0 = tau.any_constant(&mut |c| c.family() == Family::Lower && c.is_stored() && c.level() == 0);
    checks.push(Check::new(
        n,
        "tau-holds-level0-constant",
        pass_if(level0),
        crate::syntax::pretty_sugared(tau),
    ));
    // The residue is not n: plugging λabc.(S)0 for the stored constants yields n+1.
    let k = mk_church(0);
    let plug = Term::lams(&["x1", "x2", "x3"], Term::app(succ.clone(), k));
    let plugged = replace_constants(tau, &BTreeSet::new(), &mut |c: &Constant| {
        (c.family() == Family::Lower).then(|| plug.clone())
    });
    let n_val = l.n;
    checks.push(Check::new(
        n,
        "tau-is-n-plus-one-after-plugging",
        equivalence_outcome(beta_equiv(&plugged, &mk_church(n_val + 1), limits)),
        "",
    ));
    checks
}
