//! Workloads shared by the benchmarks.

use lamstore::builtins::{s1, s2, t1, t2, t3};
use lamstore::{mk_church, Term};

/// Builtin operator/successor pairs, named `T@S`.
pub fn operators() -> Vec<(&'static str, Term, Term)> {
    vec![
        ("T1@S1", t1(&s1()), s1()),
        ("T2@S2", t2(&s2()), s2()),
        ("T3@S2", t3(&s2()), s2()),
    ]
}

/// `((T) n) f` on a concrete Church numeral.
pub fn applied(operator: &Term, n: usize) -> Term {
    Term::apps(operator.clone(), [mk_church(n), Term::var("f")])
}
