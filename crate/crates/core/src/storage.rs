//! The two characterization runs.
//!
//! A run starts from `(T) c f`, where `c` is the seed constant at level `n`
//! and `f` a fresh probe variable, and alternates head reduction with one
//! constant transform until the head normal form is `(f) τ`. The lower
//! family unfolds the constant the way a Church integer would; the upper
//! family only knows that the numeral is zero or a successor `S` of
//! something.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::reduce::{beta_equiv, decompose_hnf, head_reduce, Equivalence, HnfDecomposition, Limits};
use crate::term::{is_closed_pure, mk_church, Constant, Family, Term};

/// Which rule the run applied after reaching `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Transform {
    SeedZero,
    SeedSucc,
    StoredZero,
    StoredSucc,
    Final,
}

/// One head reduction `u ≻ v` followed by the transform applied to `v`.
/// `transform` is `None` on the step where the run stopped without a rule
/// to apply.
#[derive(Clone, Debug, PartialEq)]
pub struct MacroStep {
    pub u: Term,
    pub v: Term,
    pub beta_steps: usize,
    pub transform: Option<Transform>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FailReason {
    /// The head normal form starts with a λ.
    PrefixNotEmpty,
    /// The head is a variable other than the probe, or a constant of the
    /// other family.
    ForeignHead,
    /// The probe is applied to zero or several arguments.
    FWithWrongArity,
    /// A constant in head position has too few arguments for its rule.
    MalformedHead,
    WrongLevel,
    TauNotClosed,
    TauNotN,
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Stage {
    Head,
    Macro,
    Norm,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Success { tau: Term },
    Fail { reason: FailReason, tau: Option<Term> },
    FuelExhausted { stage: Stage },
}

impl Verdict {
    pub fn is_success(&self) -> bool {
        matches!(self, Verdict::Success { .. })
    }

    pub fn reason(&self) -> Option<FailReason> {
        match self {
            Verdict::Fail { reason, .. } => Some(*reason),
            _ => None,
        }
    }

    /// The argument of the probe in the last head normal form, if the run
    /// got that far.
    pub fn tau(&self) -> Option<&Term> {
        match self {
            Verdict::Success { tau } => Some(tau),
            Verdict::Fail { tau, .. } => tau.as_ref(),
            Verdict::FuelExhausted { .. } => None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Success { .. } => 0,
            Verdict::Fail { .. } => 1,
            Verdict::FuelExhausted { .. } => 2,
        }
    }

    /// Same outcome class and reason; τ is not compared.
    pub fn same_outcome(&self, other: &Verdict) -> bool {
        match (self, other) {
            (Verdict::Success { .. }, Verdict::Success { .. }) => true,
            (Verdict::Fail { reason: a, .. }, Verdict::Fail { reason: b, .. }) => a == b,
            (Verdict::FuelExhausted { stage: a }, Verdict::FuelExhausted { stage: b }) => a == b,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub family: Family,
    pub successor: Option<Term>,
    pub n: usize,
    pub verdict: Verdict,
    pub trace: Vec<MacroStep>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }

    /// Number of constant transforms applied.
    pub fn transforms(&self) -> usize {
        self.trace
            .iter()
            .filter(|s| matches!(s.transform, Some(t) if t != Transform::Final))
            .count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("head is not a constant of the run's family")]
    ForeignHead,
    #[error("constant applied to fewer than two arguments")]
    MalformedHead,
    #[error("constant level out of range for this run")]
    WrongLevel,
}

impl From<TransformError> for FailReason {
    fn from(e: TransformError) -> Self {
        match e {
            TransformError::ForeignHead => FailReason::ForeignHead,
            TransformError::MalformedHead => FailReason::MalformedHead,
            TransformError::WrongLevel => FailReason::WrongLevel,
        }
    }
}

fn head_constant(v: &HnfDecomposition, family: Family, n: usize) -> Result<&Constant, TransformError> {
    let Term::Const(c) = &v.head else {
        return Err(TransformError::ForeignHead);
    };
    if c.family() != family {
        return Err(TransformError::ForeignHead);
    }
    let level_ok = if c.is_seed() {
        c.level() == n
    } else {
        c.level() < n
    };
    if !level_ok {
        return Err(TransformError::WrongLevel);
    }
    Ok(c)
}

/// The lower-family rule for a head normal form headed by an `x` constant.
///
/// * `(x_n) a b c̄` gives `(b) c̄` when `n = 0`, else `((a) x_{n-1,a,b,c̄}) c̄`.
/// * `(x_{l,a,b,c̄}) d̄` gives `(b) d̄` when `l = 0`, else
///   `((a) x_{l-1,a,b,d̄}) d̄`.
pub fn lower_transform(v: &HnfDecomposition, n: usize) -> Result<(Term, Transform), TransformError> {
    let c = head_constant(v, Family::Lower, n)?;
    if c.is_seed() {
        let [a, b, rest @ ..] = v.args.as_slice() else {
            return Err(TransformError::MalformedHead);
        };
        if c.level() == 0 {
            return Ok((Term::apps(b.clone(), rest.iter().cloned()), Transform::SeedZero));
        }
        let stored = Constant::stored(Family::Lower, c.level() - 1, a.clone(), b.clone(), rest.to_vec());
        let next = Term::apps(Term::app(a.clone(), Term::Const(stored)), rest.iter().cloned());
        return Ok((next, Transform::SeedSucc));
    }
    let (a, b) = c.stored_ab().expect("stored constant has a and b");
    let d = v.args.iter().cloned();
    if c.level() == 0 {
        return Ok((Term::apps(b.clone(), d), Transform::StoredZero));
    }
    let stored = Constant::stored(Family::Lower, c.level() - 1, a.clone(), b.clone(), v.args.clone());
    let next = Term::apps(Term::app(a.clone(), Term::Const(stored)), d);
    Ok((next, Transform::StoredSucc))
}

/// The upper-family rule for a head normal form headed by an `X` constant
/// applied to `u v w̄`: `(0) u v w̄` at level 0, else
/// `((S) X_{l-1,u,v,w̄}) u v w̄`. Only the current arguments are used; a
/// stored constant's payload just identifies it.
pub fn upper_transform(
    v: &HnfDecomposition,
    successor: &Term,
    n: usize,
) -> Result<(Term, Transform), TransformError> {
    let c = head_constant(v, Family::Upper, n)?;
    let [a, b, rest @ ..] = v.args.as_slice() else {
        return Err(TransformError::MalformedHead);
    };
    let args = v.args.iter().cloned();
    let (next, transform) = if c.level() == 0 {
        (Term::apps(mk_church(0), args), Transform::SeedZero)
    } else {
        let stored = Constant::stored(Family::Upper, c.level() - 1, a.clone(), b.clone(), rest.to_vec());
        (
            Term::apps(Term::app(successor.clone(), Term::Const(stored)), args),
            Transform::SeedSucc,
        )
    };
    let transform = match (c.is_stored(), transform) {
        (true, Transform::SeedZero) => Transform::StoredZero,
        (true, _) => Transform::StoredSucc,
        (false, t) => t,
    };
    Ok((next, transform))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("operator must be closed and constant-free")]
    OperatorNotClosed,
    #[error("successor must be closed and constant-free")]
    SuccessorNotClosed,
    #[error("an X-run needs a successor")]
    MissingSuccessor,
    #[error("an x-run takes no successor")]
    UnexpectedSuccessor,
}

fn validate(operator: &Term, family: Family, successor: Option<&Term>) -> Result<(), CheckError> {
    if !is_closed_pure(operator) {
        return Err(CheckError::OperatorNotClosed);
    }
    match (family, successor) {
        (Family::Lower, Some(_)) => Err(CheckError::UnexpectedSuccessor),
        (Family::Upper, None) => Err(CheckError::MissingSuccessor),
        (Family::Upper, Some(s)) if !is_closed_pure(s) => Err(CheckError::SuccessorNotClosed),
        _ => Ok(()),
    }
}

pub const PROBE: &str = "f";

/// Runs the characterization for one `n` with the probe variable `f`.
pub fn run_check(
    operator: &Term,
    family: Family,
    successor: Option<&Term>,
    n: usize,
    limits: &Limits,
) -> Result<RunReport, CheckError> {
    run_check_with_probe(operator, family, successor, n, limits, PROBE)
}

pub fn run_check_with_probe(
    operator: &Term,
    family: Family,
    successor: Option<&Term>,
    n: usize,
    limits: &Limits,
    probe: &str,
) -> Result<RunReport, CheckError> {
    validate(operator, family, successor)?;
    Ok(run_unchecked(operator, family, successor, n, limits, probe))
}

fn run_unchecked(
    operator: &Term,
    family: Family,
    successor: Option<&Term>,
    n: usize,
    limits: &Limits,
    probe: &str,
) -> RunReport {
    let mut trace = Vec::new();
    let mut u = Term::apps(operator.clone(), [Term::seed(family, n), Term::var(probe)]);
    let mut transforms = 0;
    let verdict = loop {
        let Ok((v, beta_steps)) = head_reduce(&u, limits) else {
            break Verdict::FuelExhausted { stage: Stage::Head };
        };
        let d = decompose_hnf(&v).expect("head reduction ends in a head normal form");
        let mut step = MacroStep {
            u: u.clone(),
            v,
            beta_steps,
            transform: None,
        };
        if !d.lambda_prefix.is_empty() {
            trace.push(step);
            break Verdict::Fail {
                reason: FailReason::PrefixNotEmpty,
                tau: None,
            };
        }
        if d.head.is_var(probe) {
            let [tau] = d.args.as_slice() else {
                trace.push(step);
                break Verdict::Fail {
                    reason: FailReason::FWithWrongArity,
                    tau: None,
                };
            };
            step.transform = Some(Transform::Final);
            trace.push(step);
            break final_verdict(tau, n, limits);
        }
        if transforms == limits.macro_fuel && matches!(&d.head, Term::Const(c) if c.family() == family) {
            trace.push(step);
            break Verdict::FuelExhausted { stage: Stage::Macro };
        }
        let applied = match family {
            Family::Lower => lower_transform(&d, n),
            Family::Upper => upper_transform(&d, successor.expect("validated"), n),
        };
        match applied {
            Ok((next, transform)) => {
                step.transform = Some(transform);
                trace.push(step);
                transforms += 1;
                u = next;
            }
            Err(e) => {
                trace.push(step);
                break Verdict::Fail {
                    reason: e.into(),
                    tau: None,
                };
            }
        }
    };
    RunReport {
        family,
        successor: successor.cloned(),
        n,
        verdict,
        trace,
    }
}

fn final_verdict(tau: &Term, n: usize, limits: &Limits) -> Verdict {
    if !is_closed_pure(tau) {
        return Verdict::Fail {
            reason: FailReason::TauNotClosed,
            tau: Some(tau.clone()),
        };
    }
    match beta_equiv(tau, &mk_church(n), limits) {
        Equivalence::Equal => Verdict::Success { tau: tau.clone() },
        Equivalence::Distinct => Verdict::Fail {
            reason: FailReason::TauNotN,
            tau: Some(tau.clone()),
        },
        Equivalence::Unknown => Verdict::FuelExhausted { stage: Stage::Norm },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Aggregate {
    AllPass,
    /// Smallest `n` with a `Fail` verdict. A refutation at any `n` wins
    /// over fuel exhaustion at a smaller `n`.
    FirstFailureAt {
        n: usize,
        reason: FailReason,
    },
    /// No refutation, but some `n` ran out of fuel.
    Inconclusive {
        n: usize,
        stage: Stage,
    },
}

impl Aggregate {
    pub fn exit_code(&self) -> i32 {
        match self {
            Aggregate::AllPass => 0,
            Aggregate::FirstFailureAt { .. } => 1,
            Aggregate::Inconclusive { .. } => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckSummary {
    pub family: Family,
    pub successor: Option<Term>,
    pub n_max: usize,
    pub runs: Vec<RunReport>,
    pub aggregate: Aggregate,
}

impl CheckSummary {
    pub fn exit_code(&self) -> i32 {
        self.aggregate.exit_code()
    }
}

pub fn aggregate(runs: &[RunReport]) -> Aggregate {
    if let Some(r) = runs.iter().find(|r| r.verdict.reason().is_some()) {
        return Aggregate::FirstFailureAt {
            n: r.n,
            reason: r.verdict.reason().expect("checked"),
        };
    }
    for r in runs {
        if let Verdict::FuelExhausted { stage } = r.verdict {
            return Aggregate::Inconclusive { n: r.n, stage };
        }
    }
    Aggregate::AllPass
}

/// Runs the characterization for every `n` in `0..=n_max`.
pub fn check_operator(
    operator: &Term,
    family: Family,
    successor: Option<&Term>,
    n_max: usize,
    limits: &Limits,
) -> Result<CheckSummary, CheckError> {
    validate(operator, family, successor)?;
    let runs: Vec<RunReport> = (0..=n_max)
        .into_par_iter()
        .map(|n| run_unchecked(operator, family, successor, n, limits, PROBE))
        .collect();
    Ok(CheckSummary {
        family,
        successor: successor.cloned(),
        n_max,
        aggregate: aggregate(&runs),
        runs,
    })
}
