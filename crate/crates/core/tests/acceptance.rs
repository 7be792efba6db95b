//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Case counts and fuel are fixed below.

mod common;

use std::process::ExitCode;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use lamstore::builtins::{identity, s1, s2, t1, t2, t3};
use lamstore::reduce::{check_successor, normalize, Equivalence};
use lamstore::storage::{check_operator, run_check, CheckSummary, Transform};
use lamstore::term::{church_value, substitute_many};
use lamstore::theorem::{
    check_p_along_run, delta_forward, delta_inverse, satisfies_p, verify_lemma1_along,
    verify_theorem2_instance, verify_theorem3, DeltaError, Outcome,
};
use lamstore::{
    alpha_eq, beta_equiv, head_reduce, head_step, mk_church, parse_open, pretty, pretty_sugared, Aggregate,
    Constant, Env, FailReason, Family, Limits, Term, Verdict,
};

const N_MAX: usize = 8;
const K_MAX: usize = 10;
const T3_N_MAX: usize = 5;
const SUBST_CASES: u32 = 1000;
const LEMMA1_CASES: u32 = 500;
const DELTA_CASES: u32 = 1000;
const ROUNDTRIP_CASES: u32 = 1000;
const STARVED_HEAD_FUEL: usize = 5;

type Report = Result<String, String>;
type Criterion = fn() -> Report;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn limits() -> Limits {
    Limits::default()
}

fn all_tau_are_numerals(s: &CheckSummary) -> Result<(), String> {
    for r in &s.runs {
        let Verdict::Success { tau } = &r.verdict else {
            return Err(format!("n={}: {:?}", r.n, r.verdict));
        };
        ensure(
            beta_equiv(tau, &mk_church(r.n), &limits()) == Equivalence::Equal,
            || format!("n={}: tau not ≃ n", r.n),
        )?;
    }
    Ok(())
}

fn successors() -> Report {
    for (name, s) in [("S1", s1()), ("S2", s2())] {
        let r = check_successor(&s, K_MAX, &limits()).unwrap();
        ensure(r.passed(), || format!("{name}: {:?}", r.first_failure()))?;
    }
    let r = check_successor(&identity(), K_MAX, &limits()).unwrap();
    ensure(r.first_failure() == Some((0, Equivalence::Distinct)), || {
        format!("I: {:?}", r.first_failure())
    })?;
    Ok(format!("S1, S2 pass for k <= {K_MAX}; I fails at k=0"))
}

fn storage_operators() -> Report {
    for (name, op) in [("T1", t1(&s1())), ("T2", t2(&s1()))] {
        let s = check_operator(&op, Family::Lower, None, N_MAX, &limits()).unwrap();
        ensure(s.aggregate == Aggregate::AllPass, || {
            format!("{name}: {:?}", s.aggregate)
        })?;
        all_tau_are_numerals(&s).map_err(|e| format!("{name}: {e}"))?;
        for r in &s.runs {
            let nf = normalize(r.verdict.tau().unwrap(), &limits()).map_err(|e| format!("{e:?}"))?;
            ensure(
                alpha_eq(&nf, &mk_church(r.n)) && church_value(&nf) == Some(r.n),
                || format!("{name} n={}: normal form {}", r.n, pretty(&nf)),
            )?;
            let expected = Term::iterate(&s1(), r.n, mk_church(0));
            ensure(alpha_eq(r.verdict.tau().unwrap(), &expected), || {
                format!("{name} n={}: tau is not (S1)^n 0", r.n)
            })?;
        }
    }
    Ok(format!(
        "T1, T2 AllPass for n <= {N_MAX}; tau = (S1)^n 0, normal form = n"
    ))
}

/// `V_1 = X_n F f 0`, `V_{i+1} = X_{n-i, F, F^{i-1} f, 0} F (F^i f) 0` for
/// `1 <= i <= n`, then `0 F (F^n f) 0 ≻ (f) (S2)^n 0`.
fn t2_s2_chain(n: usize) -> Vec<Term> {
    let env = Env::prelude(&s2());
    let big_f = env.lookup("F").unwrap().clone();
    let f = Term::var("f");
    let zero = mk_church(0);
    let fk = |k: usize| Term::iterate(&big_f, k, f.clone());
    let mut vs = vec![Term::apps(
        Term::seed(Family::Upper, n),
        [big_f.clone(), f.clone(), zero.clone()],
    )];
    for i in 1..=n {
        let c = Constant::stored(Family::Upper, n - i, big_f.clone(), fk(i - 1), vec![zero.clone()]);
        vs.push(Term::apps(Term::Const(c), [big_f.clone(), fk(i), zero.clone()]));
    }
    vs.push(Term::app(f, Term::iterate(&s2(), n, zero)));
    vs
}

fn s_storage() -> Report {
    for (tn, mk) in [("T1", t1 as fn(&Term) -> Term), ("T2", t2)] {
        for (inner_name, inner) in [("S1", s1()), ("S2", s2())] {
            for (sn, s) in [("S1", s1()), ("S2", s2())] {
                let s_ = check_operator(&mk(&inner), Family::Upper, Some(&s), N_MAX, &limits()).unwrap();
                let label = format!("{tn}@{inner_name} under {sn}");
                ensure(s_.aggregate == Aggregate::AllPass, || {
                    format!("{label}: {:?}", s_.aggregate)
                })?;
                all_tau_are_numerals(&s_).map_err(|e| format!("{label}: {e}"))?;
            }
        }
    }
    let s = check_operator(&t2(&s2()), Family::Upper, Some(&s2()), N_MAX, &limits()).unwrap();
    for r in &s.runs {
        let n = r.n;
        ensure(r.transforms() == n + 1, || {
            format!("T2/S2 n={n}: {} transforms", r.transforms())
        })?;
        let chain = t2_s2_chain(n);
        let vs: Vec<&Term> = r.trace.iter().map(|st| &st.v).collect();
        ensure(vs.len() == chain.len(), || {
            format!("T2/S2 n={n}: {} steps, chain has {}", vs.len(), chain.len())
        })?;
        for (i, (got, want)) in vs.iter().zip(&chain).enumerate() {
            ensure(alpha_eq(got, want), || {
                format!(
                    "T2/S2 n={n}: V_{} = {} expected {}",
                    i + 1,
                    pretty_sugared(got),
                    pretty_sugared(want)
                )
            })?;
        }
        ensure(
            r.trace.last().and_then(|st| st.transform) == Some(Transform::Final),
            || format!("T2/S2 n={n}: last step not Final"),
        )?;
        let tau = r.verdict.tau().unwrap();
        ensure(alpha_eq(tau, &Term::iterate(&s2(), n, mk_church(0))), || {
            format!("T2/S2 n={n}: tau = {}", pretty_sugared(tau))
        })?;
    }
    Ok(format!(
        "T1, T2 (either inner successor) AllPass under S1 and S2 for n <= {N_MAX}; T2/S2 chains match"
    ))
}

fn theorem3() -> Report {
    let op = t3(&s2());
    let upper = check_operator(&op, Family::Upper, Some(&s2()), T3_N_MAX, &limits()).unwrap();
    ensure(upper.aggregate == Aggregate::AllPass, || {
        format!("X-run: {:?}", upper.aggregate)
    })?;
    all_tau_are_numerals(&upper)?;
    let lower = check_operator(&op, Family::Lower, None, T3_N_MAX, &limits()).unwrap();
    for r in &lower.runs {
        if r.n == 0 {
            ensure(r.verdict.is_success(), || format!("x-run n=0: {:?}", r.verdict))?;
            continue;
        }
        let Verdict::Fail {
            reason: FailReason::TauNotClosed,
            tau: Some(tau),
        } = &r.verdict
        else {
            return Err(format!("x-run n={}: {:?}", r.n, r.verdict));
        };
        let level0 =
            tau.any_constant(&mut |c| c.family() == Family::Lower && c.is_stored() && c.level() == 0);
        ensure(level0, || {
            format!("x-run n={}: no level-0 stored constant in tau", r.n)
        })?;
    }
    let report = verify_theorem3(T3_N_MAX, &limits());
    ensure(report.outcome() == Outcome::Pass, || {
        format!("verify_theorem3: {:?}", report.failures().next())
    })?;
    Ok(format!(
        "T3 stores under S2, x-run refuted with TauNotClosed for 1 <= n <= {T3_N_MAX}"
    ))
}

fn builtin_operators() -> Vec<(&'static str, Term)> {
    vec![
        ("T1@S1", t1(&s1())),
        ("T1@S2", t1(&s2())),
        ("T2@S1", t2(&s1())),
        ("T2@S2", t2(&s2())),
        ("T3@S1", t3(&s1())),
        ("T3@S2", t3(&s2())),
    ]
}

fn theorem2() -> Report {
    for (name, op) in builtin_operators() {
        for n in 0..=N_MAX {
            let l = run_check(&op, Family::Lower, None, n, &limits()).unwrap();
            let u = run_check(&op, Family::Upper, Some(&s1()), n, &limits()).unwrap();
            ensure(l.verdict.same_outcome(&u.verdict), || {
                format!("{name} n={n}: {:?} vs {:?}", l.verdict, u.verdict)
            })?;
            if let (Verdict::Success { tau: a }, Verdict::Success { tau: b }) = (&l.verdict, &u.verdict) {
                ensure(alpha_eq(a, b), || format!("{name} n={n}: tau differ"))?;
            }
        }
        let r = verify_theorem2_instance(&op, N_MAX, &limits()).unwrap();
        ensure(r.outcome() == Outcome::Pass, || {
            format!("{name}: {:?}", r.failures().next())
        })?;
    }

    let mut runner = common::runner(DELTA_CASES);
    runner
        .run(&common::lower_term(), |t| {
            let back = delta_inverse(&delta_forward(&t).unwrap()).unwrap();
            prop_assert!(
                alpha_eq(&back, &t),
                "{} came back as {}",
                pretty(&t),
                pretty(&back)
            );
            Ok(())
        })
        .map_err(|e| format!("Δ⁻¹∘Δ: {e}"))?;

    let mut runner = common::runner(DELTA_CASES);
    let satisfying = std::cell::Cell::new(0usize);
    let upper = prop_oneof![common::p_term(), common::upper_term()];
    runner
        .run(&upper, |t| {
            match (satisfies_p(&t), delta_inverse(&t)) {
                (Ok(()), Ok(pre)) => {
                    satisfying.set(satisfying.get() + 1);
                    let again = delta_forward(&pre).unwrap();
                    prop_assert!(
                        alpha_eq(&again, &t),
                        "{} came back as {}",
                        pretty(&t),
                        pretty(&again)
                    );
                }
                (Err(v), Err(DeltaError::Violation(w))) => prop_assert_eq!(v, w),
                (p, d) => {
                    return Err(TestCaseError::fail(format!(
                        "satisfies_p {p:?} but delta_inverse {d:?}"
                    )))
                }
            }
            Ok(())
        })
        .map_err(|e| format!("Δ∘Δ⁻¹: {e}"))?;
    Ok(format!(
        "6 builtins agree for n <= {N_MAX}; Δ round trips on {DELTA_CASES} + {DELTA_CASES} terms ({} with (P))",
        satisfying.get()
    ))
}

fn properties() -> Report {
    // (a) one head step, and a whole head reduction, commute with substitution
    let mut runner = common::runner(SUBST_CASES);
    let small = limits().with_head_fuel(200);
    runner
        .run(&(common::pure_redex(), common::substitution()), |(u, sigma)| {
            let stepped = head_step(&u).expect("generated with a head redex");
            let su = substitute_many(&u, &sigma);
            let via = head_step(&su).expect("substitution keeps the head redex");
            prop_assert!(alpha_eq(&via, &substitute_many(&stepped, &sigma)));
            if let Ok((v, k)) = head_reduce(&u, &small) {
                let mut cur = su;
                for _ in 0..k {
                    cur = head_step(&cur).expect("same number of head steps");
                }
                prop_assert!(alpha_eq(&cur, &substitute_many(&v, &sigma)));
            }
            Ok(())
        })
        .map_err(|e| format!("(a) substitution lemma: {e}"))?;

    // (b) (P) survives a head step
    let mut runner = common::runner(LEMMA1_CASES);
    runner
        .run(&common::p_redex(), |t| {
            prop_assert_eq!(satisfies_p(&t), Ok(()));
            let next = head_step(&t).expect("generated with a head redex");
            let r = satisfies_p(&next);
            prop_assert!(r.is_ok(), "{} ≻ {}: {:?}", pretty(&t), pretty(&next), r);
            Ok(())
        })
        .map_err(|e| format!("(b) (P) preservation: {e}"))?;

    // (c) every X-run with S1 from the S-storage checks
    let mut traces = 0;
    for (name, op) in [
        ("T1@S1", t1(&s1())),
        ("T1@S2", t1(&s2())),
        ("T2@S1", t2(&s1())),
        ("T2@S2", t2(&s2())),
    ] {
        for n in 0..=N_MAX {
            let r = run_check(&op, Family::Upper, Some(&s1()), n, &limits()).unwrap();
            check_p_along_run(&r).map_err(|(i, v)| format!("(c) {name} n={n} step {i}: {v}"))?;
            let l1 = verify_lemma1_along(&r.trace);
            ensure(l1.passed(), || format!("(c) {name} n={n}: {l1:?}"))?;
            traces += 1;
        }
    }

    // (d) pretty then parse is the identity up to α
    let mut runner = common::runner(ROUNDTRIP_CASES);
    let any = prop_oneof![common::pure_term(), common::lower_term(), common::upper_term()];
    runner
        .run(&any, |t| {
            for text in [pretty(&t), pretty_sugared(&t)] {
                let back = parse_open(&text, &Env::empty())
                    .map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
                prop_assert!(alpha_eq(&back, &t), "{text}");
            }
            Ok(())
        })
        .map_err(|e| format!("(d) round trip: {e}"))?;

    Ok(format!(
        "(a) {SUBST_CASES} pairs, (b) {LEMMA1_CASES} terms, (c) {traces} traces, (d) {ROUNDTRIP_CASES} terms"
    ))
}

fn fuel_honesty() -> Report {
    let starved = limits().with_head_fuel(STARVED_HEAD_FUEL);
    let mut exhausted = 0;
    let mut worst = 0;
    let mut runs = 0;
    for inner in [s1(), s2()] {
        let op = t2(&inner);
        let mut summaries = vec![check_operator(&op, Family::Lower, None, N_MAX, &starved).unwrap()];
        for s in [s1(), s2()] {
            summaries.push(check_operator(&op, Family::Upper, Some(&s), N_MAX, &starved).unwrap());
        }
        for s in &summaries {
            for r in &s.runs {
                runs += 1;
                ensure(!matches!(r.verdict, Verdict::Fail { .. }), || {
                    format!("{} n={}: {:?}", s.family, r.n, r.verdict)
                })?;
                if matches!(r.verdict, Verdict::FuelExhausted { .. }) {
                    exhausted += 1;
                }
            }
            worst = worst.max(s.exit_code());
        }
        let r = verify_theorem2_instance(&op, N_MAX, &starved).unwrap();
        ensure(r.outcome() != Outcome::Fail, || {
            format!("theorem2: {:?}", r.failures().next())
        })?;
    }
    ensure(worst == 2 && exhausted > 0, || {
        format!("combined exit {worst}, {exhausted} exhausted runs")
    })?;
    Ok(format!(
        "head_fuel {STARVED_HEAD_FUEL}: {exhausted}/{runs} T2 runs exhausted, none refuted, exit 2"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 7] = [
        ("successors", successors),
        ("storage operators", storage_operators),
        ("S-storage", s_storage),
        ("theorem 3", theorem3),
        ("theorem 2 and Δ", theorem2),
        ("property suites", properties),
        ("fuel honesty", fuel_honesty),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} ({name}): PASS  {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL  {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
