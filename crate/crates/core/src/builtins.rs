//! The named terms every run starts from: the two standard successors and
//! the three sample operators.

use crate::syntax::{parse, Env};
use crate::term::Term;

fn closed(src: &str) -> Term {
    parse(src, &Env::empty()).expect("builtin term parses")
}

pub fn identity() -> Term {
    closed(r"\x. x")
}

/// `λn λf λx (f)((n)f)x`
pub fn s1() -> Term {
    closed(r"\n f x. f (n f x)")
}

/// `λn λf λx ((n)f)(f)x`
pub fn s2() -> Term {
    closed(r"\n f x. n f (f x)")
}

fn operator(name: &str, successor: &Term) -> Term {
    Env::prelude(successor)
        .lookup(name)
        .cloned()
        .expect("operator defined in prelude")
}

/// `λn ((n)G)δ` with `G = λxλy (x)λz (y)(S)z` and `δ = λf (f)0`.
pub fn t1(successor: &Term) -> Term {
    operator("T1", successor)
}

/// `λn λf (((n)F)f)0` with `F = λxλy (x)(S)y`.
pub fn t2(successor: &Term) -> Term {
    operator("T2", successor)
}

/// The operator that stores under the X-rules with `S2` but not under the
/// x-rules: `λx (x) a b 0 S`.
pub fn t3(successor: &Term) -> Term {
    operator("T3", successor)
}

/// Builtin successors by name.
pub fn successor_named(name: &str) -> Option<Term> {
    match name {
        "S1" => Some(s1()),
        "S2" => Some(s2()),
        _ => None,
    }
}
