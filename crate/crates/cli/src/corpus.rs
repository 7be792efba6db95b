//! Every builtin claim, checked at `n ≤ n_max` with the caller's limits.

use rayon::prelude::*;
use serde::Serialize;

use lamstore::builtins::{identity, s1, s2, t1, t2, t3};
use lamstore::reduce::{check_successor, Equivalence};
use lamstore::storage::{check_operator, FailReason, RunReport, Verdict};
use lamstore::theorem::{verify_theorem2_instance, verify_theorem3, Outcome, TheoremReport};
use lamstore::{Family, Limits, Term};

pub const SUCCESSOR_K_MAX: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Met,
    Deviated,
    Starved,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimRow {
    pub claim: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub status: Status,
    pub claims: Vec<ClaimRow>,
}

impl CorpusReport {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Met => 0,
            Status::Deviated => 1,
            Status::Starved => 2,
        }
    }
}

#[derive(Clone, Copy)]
enum Expect {
    Success,
    /// Success at 0, `TauNotClosed` from 1 on.
    RefutedFromOne,
}

enum Claim {
    Successor(&'static str, Term, bool),
    Run {
        name: String,
        op: Term,
        family: Family,
        successor: Option<Term>,
        expect: Expect,
    },
    Theorem2(String, Term),
    Theorem3,
}

fn claims() -> Vec<Claim> {
    let mut out = vec![
        Claim::Successor("successor S1", s1(), true),
        Claim::Successor("successor S2", s2(), true),
        Claim::Successor("identity is not a successor", identity(), false),
    ];
    for (name, op) in [("T1", t1(&s1())), ("T2", t2(&s1()))] {
        out.push(Claim::Run {
            name: format!("{name} stores (x-run)"),
            op,
            family: Family::Lower,
            successor: None,
            expect: Expect::Success,
        });
    }
    for (sname, s) in [("S1", s1()), ("S2", s2())] {
        for (tname, op) in [("T1", t1(&s)), ("T2", t2(&s))] {
            out.push(Claim::Run {
                name: format!("{tname} stores under {sname} (X-run)"),
                op,
                family: Family::Upper,
                successor: Some(s.clone()),
                expect: Expect::Success,
            });
        }
    }
    out.push(Claim::Run {
        name: "T3 stores under S2 (X-run)".into(),
        op: t3(&s2()),
        family: Family::Upper,
        successor: Some(s2()),
        expect: Expect::Success,
    });
    out.push(Claim::Run {
        name: "T3 is not a storage operator (x-run)".into(),
        op: t3(&s2()),
        family: Family::Lower,
        successor: None,
        expect: Expect::RefutedFromOne,
    });
    out.push(Claim::Theorem2("theorem2 on T1".into(), t1(&s1())));
    out.push(Claim::Theorem2("theorem2 on T2".into(), t2(&s1())));
    out.push(Claim::Theorem2("theorem2 on T3".into(), t3(&s2())));
    out.push(Claim::Theorem3);
    out
}

fn run_status(r: &RunReport, expect: Expect) -> Status {
    let wanted = match (expect, r.n) {
        (Expect::Success, _) | (Expect::RefutedFromOne, 0) => None,
        (Expect::RefutedFromOne, _) => Some(FailReason::TauNotClosed),
    };
    match (&r.verdict, wanted) {
        (Verdict::FuelExhausted { .. }, _) => Status::Starved,
        (Verdict::Success { .. }, None) => Status::Met,
        (Verdict::Fail { reason, .. }, Some(w)) if *reason == w => Status::Met,
        _ => Status::Deviated,
    }
}

/// Deviated beats starved beats met.
fn combine(statuses: impl IntoIterator<Item = Status>) -> Status {
    statuses.into_iter().fold(Status::Met, |acc, s| match (acc, s) {
        (Status::Deviated, _) | (_, Status::Deviated) => Status::Deviated,
        (Status::Starved, _) | (_, Status::Starved) => Status::Starved,
        _ => Status::Met,
    })
}

fn theorem_row(name: String, r: &TheoremReport) -> ClaimRow {
    let status = match r.outcome() {
        Outcome::Pass => Status::Met,
        Outcome::Fail => Status::Deviated,
        Outcome::Inconclusive => Status::Starved,
    };
    let detail = match r.failures().next() {
        None => format!("{} checks pass", r.checks.len()),
        Some(c) => format!(
            "{}{}: {}",
            c.name,
            c.n.map(|n| format!(" at n={n}")).unwrap_or_default(),
            c.detail
        ),
    };
    ClaimRow {
        claim: name,
        status,
        detail,
    }
}

fn evaluate(claim: &Claim, n_max: usize, limits: &Limits) -> ClaimRow {
    match claim {
        Claim::Successor(name, s, expect_pass) => {
            let r = check_successor(s, SUCCESSOR_K_MAX, limits).expect("builtin successors are closed");
            let status = if r.outcomes.contains(&Equivalence::Unknown) && r.exit_code() != 1 {
                Status::Starved
            } else if r.passed() == *expect_pass {
                Status::Met
            } else {
                Status::Deviated
            };
            let detail = match r.first_failure() {
                None => format!("(S) k = k+1 for k <= {SUCCESSOR_K_MAX}"),
                Some((k, e)) => format!("first failure at k={k} ({e:?})"),
            };
            ClaimRow {
                claim: name.to_string(),
                status,
                detail,
            }
        }
        Claim::Run {
            name,
            op,
            family,
            successor,
            expect,
        } => {
            let s =
                check_operator(op, *family, successor.as_ref(), n_max, limits).expect("builtins are closed");
            let per_n: Vec<Status> = s.runs.iter().map(|r| run_status(r, *expect)).collect();
            let status = combine(per_n.iter().copied());
            let detail = match per_n.iter().position(|st| *st != Status::Met) {
                None => format!("as expected for n <= {n_max}"),
                Some(i) => {
                    let r = &s.runs[i];
                    match &r.verdict {
                        Verdict::Success { .. } => format!("n={}: unexpected success", r.n),
                        Verdict::Fail { reason, .. } => format!("n={}: fail ({reason})", r.n),
                        Verdict::FuelExhausted { stage } => format!("n={}: fuel exhausted ({stage})", r.n),
                    }
                }
            };
            ClaimRow {
                claim: name.clone(),
                status,
                detail,
            }
        }
        Claim::Theorem2(name, op) => {
            let r = verify_theorem2_instance(op, n_max, limits).expect("builtins are closed");
            theorem_row(name.clone(), &r)
        }
        Claim::Theorem3 => theorem_row("theorem3".into(), &verify_theorem3(n_max, limits)),
    }
}

pub fn run_corpus(n_max: usize, limits: &Limits) -> CorpusReport {
    let rows: Vec<ClaimRow> = claims().par_iter().map(|c| evaluate(c, n_max, limits)).collect();
    CorpusReport {
        status: combine(rows.iter().map(|r| r.status)),
        claims: rows,
    }
}
