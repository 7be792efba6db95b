#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use lamstore::term::{substitute_many, Substitution};
use lamstore::{Constant, Family, Term};

/// Names the generators bind.
pub const BINDERS: [&str; 3] = ["p", "q", "r"];
/// Names the generators never bind.
pub const FREE: [&str; 3] = ["u", "v", "w"];

pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn any_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["p", "q", "r", "u", "v", "w"])
}

fn binder() -> impl Strategy<Value = &'static str> {
    prop::sample::select(BINDERS.to_vec())
}

fn grow(leaf: BoxedStrategy<Term>, depth: u32) -> BoxedStrategy<Term> {
    leaf.prop_recursive(depth, 48, 2, |inner| {
        prop_oneof![
            (binder(), inner.clone()).prop_map(|(x, b)| Term::lam(x, b)),
            (inner.clone(), inner).prop_map(|(f, a)| Term::app(f, a)),
        ]
    })
    .boxed()
}

/// Constant-free terms over `p q r u v w`.
pub fn pure_term() -> BoxedStrategy<Term> {
    grow(any_name().prop_map(Term::var).boxed(), 5)
}

/// Replaces free `p q r` by `u` so the result's free names lie in `FREE`.
pub fn close_binders(t: Term) -> Term {
    let sigma: Substitution = BINDERS.iter().map(|b| ((*b).into(), Term::var("u"))).collect();
    substitute_many(&t, &sigma)
}

fn constant_leaf(family: Family, payload: BoxedStrategy<Term>) -> BoxedStrategy<Term> {
    prop_oneof![
        (0usize..4).prop_map(move |k| Term::seed(family, k)),
        (
            0usize..4,
            payload.clone(),
            payload.clone(),
            prop::collection::vec(payload, 0..2)
        )
            .prop_map(move |(k, a, b, rest)| Term::Const(Constant::stored(family, k, a, b, rest))),
    ]
    .boxed()
}

/// Terms with constants of one family. Payload terms have free names in
/// `FREE` only and may themselves hold seed constants.
pub fn family_term(family: Family) -> BoxedStrategy<Term> {
    let payload_leaf = prop_oneof![
        3 => any_name().prop_map(Term::var),
        1 => (0usize..3).prop_map(move |k| Term::seed(family, k)),
    ];
    let payload = grow(payload_leaf.boxed(), 2).prop_map(close_binders).boxed();
    let leaf = prop_oneof![
        3 => any_name().prop_map(Term::var),
        1 => constant_leaf(family, payload),
    ];
    grow(leaf.boxed(), 4)
}

pub fn lower_term() -> BoxedStrategy<Term> {
    family_term(Family::Lower)
}

pub fn upper_term() -> BoxedStrategy<Term> {
    family_term(Family::Upper)
}

/// Upper terms satisfying (P), built as images of lower terms.
pub fn p_term() -> BoxedStrategy<Term> {
    lower_term()
        .prop_map(|t| lamstore::theorem::delta_forward(&t).expect("lower term"))
        .boxed()
}

/// `λp̄. (λx. body) arg extra…` with (P)-satisfying parts.
pub fn p_redex() -> BoxedStrategy<Term> {
    (
        prop::collection::vec(binder(), 0..2),
        binder(),
        p_term(),
        p_term(),
        prop::collection::vec(p_term(), 0..2),
    )
        .prop_map(|(prefix, x, body, arg, extra)| {
            let redex = Term::apps(Term::lam(x, body), std::iter::once(arg).chain(extra));
            Term::lams(&prefix, redex)
        })
        .boxed()
}

/// A pure term with a head redex.
pub fn pure_redex() -> BoxedStrategy<Term> {
    (
        prop::collection::vec(binder(), 0..2),
        binder(),
        pure_term(),
        pure_term(),
        prop::collection::vec(pure_term(), 0..2),
    )
        .prop_map(|(prefix, x, body, arg, extra)| {
            Term::lams(
                &prefix,
                Term::apps(Term::lam(x, body), std::iter::once(arg).chain(extra)),
            )
        })
        .boxed()
}

/// Substitutions for the names in `FREE`.
pub fn substitution() -> BoxedStrategy<Substitution> {
    prop::collection::vec((prop::sample::select(FREE.to_vec()), pure_term()), 1..3)
        .prop_map(|pairs| pairs.into_iter().map(|(x, t)| (x.into(), t)).collect())
        .boxed()
}
