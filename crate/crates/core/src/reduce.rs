//! Head reduction, normal-order normalization and the fuel that bounds them.

use serde::Serialize;
use thiserror::Error;

use crate::term::{alpha_eq, is_closed_pure, mk_church, substitute, Name, Term};

/// Step budgets. Every budget is at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Maximum β-steps for one head reduction.
    pub head_fuel: usize,
    /// Maximum constant transforms in one characterization run.
    pub macro_fuel: usize,
    /// Maximum β-steps for one normalization.
    pub norm_fuel: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            head_fuel: 1_000_000,
            macro_fuel: 10_000,
            norm_fuel: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("every fuel limit must be at least 1")]
pub struct InvalidLimits;

impl Limits {
    pub fn new(head_fuel: usize, macro_fuel: usize, norm_fuel: usize) -> Result<Self, InvalidLimits> {
        if head_fuel == 0 || macro_fuel == 0 || norm_fuel == 0 {
            return Err(InvalidLimits);
        }
        Ok(Limits {
            head_fuel,
            macro_fuel,
            norm_fuel,
        })
    }

    pub fn with_head_fuel(self, head_fuel: usize) -> Self {
        Limits { head_fuel, ..self }
    }
}

/// Head reduction did not reach a head normal form within budget.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("head reduction out of fuel after {steps} steps")]
pub struct FuelExhausted {
    pub partial: Term,
    pub steps: usize,
}

/// Normalization did not reach a normal form within budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("normalization out of fuel after {steps} steps")]
pub struct NormFuelExhausted {
    pub steps: usize,
}

/// A head normal form `λx1...λxk (h) a1 ... am` split into its parts.
#[derive(Debug, Clone, PartialEq)]
pub struct HnfDecomposition {
    pub lambda_prefix: Vec<Name>,
    /// A variable or a constant.
    pub head: Term,
    pub args: Vec<Term>,
}

impl HnfDecomposition {
    pub fn reassemble(&self) -> Term {
        Term::lams(
            &self.lambda_prefix,
            Term::apps(self.head.clone(), self.args.iter().cloned()),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("term has a head redex")]
pub struct HasHeadRedex;

/// Contracts the head redex, if there is one. Constants in head position
/// are inert.
pub fn head_step(t: &Term) -> Option<Term> {
    let mut prefix = Vec::new();
    let mut cur = t;
    while let Term::Lam(x, b) = cur {
        prefix.push(x.clone());
        cur = b;
    }
    let (head, args) = cur.spine();
    let (Term::Lam(x, body), Some(first)) = (head, args.first()) else {
        return None;
    };
    let contracted = substitute(body, x, first);
    Some(Term::lams(
        &prefix,
        Term::apps(contracted, args[1..].iter().map(|a| (*a).clone())),
    ))
}

/// Iterates [`head_step`] to a head normal form. Returns the result and
/// the exact number of contractions.
pub fn head_reduce(t: &Term, limits: &Limits) -> Result<(Term, usize), FuelExhausted> {
    let mut cur = t.clone();
    let mut steps = 0;
    loop {
        match head_step(&cur) {
            None => return Ok((cur, steps)),
            Some(_) if steps == limits.head_fuel => return Err(FuelExhausted { partial: cur, steps }),
            Some(next) => {
                cur = next;
                steps += 1;
            }
        }
    }
}

pub fn decompose_hnf(t: &Term) -> Result<HnfDecomposition, HasHeadRedex> {
    let mut prefix = Vec::new();
    let mut cur = t;
    while let Term::Lam(x, b) = cur {
        prefix.push(x.clone());
        cur = b;
    }
    let (head, args) = cur.spine();
    if matches!(head, Term::Lam(..)) {
        return Err(HasHeadRedex);
    }
    Ok(HnfDecomposition {
        lambda_prefix: prefix,
        head: head.clone(),
        args: args.into_iter().cloned().collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Solvability {
    Solvable {
        steps: usize,
    },
    /// Head reduction did not terminate within fuel. Never read as unsolvable.
    Unknown,
}

pub fn is_solvable(t: &Term, limits: &Limits) -> Solvability {
    match head_reduce(t, limits) {
        Ok((_, steps)) => Solvability::Solvable { steps },
        Err(_) => Solvability::Unknown,
    }
}

/// Normal-order reduction to β-normal form. Constants are inert atoms but
/// their payloads are normalized too.
pub fn normalize(t: &Term, limits: &Limits) -> Result<Term, NormFuelExhausted> {
    let mut used = 0;
    normalize_rec(t, limits.norm_fuel, &mut used)
}

fn normalize_rec(t: &Term, fuel: usize, used: &mut usize) -> Result<Term, NormFuelExhausted> {
    let mut cur = t.clone();
    while let Some(next) = head_step(&cur) {
        if *used == fuel {
            return Err(NormFuelExhausted { steps: *used });
        }
        *used += 1;
        cur = next;
    }
    let hnf = decompose_hnf(&cur).expect("no head redex after head reduction");
    let head = match &hnf.head {
        Term::Const(c) => Term::Const(c.try_map_payload(|p| normalize_rec(p, fuel, used))?),
        other => other.clone(),
    };
    let args = hnf
        .args
        .iter()
        .map(|a| normalize_rec(a, fuel, used))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Term::lams(&hnf.lambda_prefix, Term::apps(head, args)))
}

/// True iff no β-redex occurs anywhere, payloads included.
pub fn is_beta_normal(t: &Term) -> bool {
    match t {
        Term::Var(_) => true,
        Term::Lam(_, b) => is_beta_normal(b),
        Term::App(f, a) => !matches!(**f, Term::Lam(..)) && is_beta_normal(f) && is_beta_normal(a),
        Term::Const(c) => c.payload().iter().all(is_beta_normal),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Equivalence {
    Equal,
    Distinct,
    Unknown,
}

/// Compares normal forms. `Unknown` when either side runs out of fuel.
pub fn beta_equiv(t: &Term, u: &Term, limits: &Limits) -> Equivalence {
    match (normalize(t, limits), normalize(u, limits)) {
        (Ok(a), Ok(b)) if alpha_eq(&a, &b) => Equivalence::Equal,
        (Ok(_), Ok(_)) => Equivalence::Distinct,
        _ => Equivalence::Unknown,
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("successor candidate must be closed and constant-free")]
pub struct NotClosed;

/// Per-`k` outcomes of `(S) k ≃β k+1` for `k = 0..=k_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuccessorReport {
    pub k_max: usize,
    pub outcomes: Vec<Equivalence>,
}

impl SuccessorReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|e| *e == Equivalence::Equal)
    }

    /// First `k` that is not `Equal`.
    pub fn first_failure(&self) -> Option<(usize, Equivalence)> {
        self.outcomes
            .iter()
            .copied()
            .enumerate()
            .find(|(_, e)| *e != Equivalence::Equal)
    }

    /// 0 = successor on every checked `k`, 1 = refuted, 2 = inconclusive.
    pub fn exit_code(&self) -> i32 {
        if self.outcomes.contains(&Equivalence::Distinct) {
            1
        } else if self.outcomes.contains(&Equivalence::Unknown) {
            2
        } else {
            0
        }
    }
}

pub fn check_successor(
    successor: &Term,
    k_max: usize,
    limits: &Limits,
) -> Result<SuccessorReport, NotClosed> {
    if !is_closed_pure(successor) {
        return Err(NotClosed);
    }
    let outcomes = (0..=k_max)
        .map(|k| {
            beta_equiv(
                &Term::app(successor.clone(), mk_church(k)),
                &mk_church(k + 1),
                limits,
            )
        })
        .collect();
    Ok(SuccessorReport { k_max, outcomes })
}
