//! λ-terms extended with the two families of indexed numeral constants.
//!
//! Terms use a named representation. Bound names are only meaningful up to
//! α-equivalence; use [`alpha_eq`] rather than `==` when comparing terms
//! that went through substitution.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

pub type Name = Arc<str>;

/// Which constant family a [`Constant`] belongs to: `x` (lower) or `X` (upper).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Lower,
    Upper,
}

impl Family {
    pub fn symbol(self) -> char {
        match self {
            Family::Lower => 'x',
            Family::Upper => 'X',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A symbolic numeral constant.
///
/// A *seed* constant (`x[n]`, `X[n]`) has an empty payload. A *stored*
/// constant (`x[n; a, b, c...]`) carries at least two payload terms: the
/// `a` and `b` it was created from, followed by the remaining arguments.
/// Constants are identified by their subscripts, so two constants are the
/// same iff family, level and payload agree up to α-equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constant {
    family: Family,
    level: usize,
    payload: Vec<Term>,
}

impl Constant {
    pub fn seed(family: Family, level: usize) -> Self {
        Constant {
            family,
            level,
            payload: Vec::new(),
        }
    }

    pub fn stored(family: Family, level: usize, a: Term, b: Term, rest: Vec<Term>) -> Self {
        let mut payload = Vec::with_capacity(rest.len() + 2);
        payload.push(a);
        payload.push(b);
        payload.extend(rest);
        Constant {
            family,
            level,
            payload,
        }
    }

    /// Builds a constant from a raw payload; `None` if the payload has
    /// exactly one entry.
    pub fn from_parts(family: Family, level: usize, payload: Vec<Term>) -> Option<Self> {
        if payload.len() == 1 {
            return None;
        }
        Some(Constant {
            family,
            level,
            payload,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn payload(&self) -> &[Term] {
        &self.payload
    }

    pub fn is_seed(&self) -> bool {
        self.payload.is_empty()
    }

    pub fn is_stored(&self) -> bool {
        !self.payload.is_empty()
    }

    /// The `a` and `b` of a stored constant.
    pub fn stored_ab(&self) -> Option<(&Term, &Term)> {
        match self.payload.as_slice() {
            [a, b, ..] => Some((a, b)),
            _ => None,
        }
    }

    pub fn map_payload(&self, mut f: impl FnMut(&Term) -> Term) -> Constant {
        Constant {
            family: self.family,
            level: self.level,
            payload: self.payload.iter().map(&mut f).collect(),
        }
    }

    pub fn try_map_payload<E>(&self, mut f: impl FnMut(&Term) -> Result<Term, E>) -> Result<Constant, E> {
        Ok(Constant {
            family: self.family,
            level: self.level,
            payload: self.payload.iter().map(&mut f).collect::<Result<_, _>>()?,
        })
    }

    pub fn with_family(&self, family: Family) -> Constant {
        Constant {
            family,
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(Name),
    Lam(Name, Box<Term>),
    App(Box<Term>, Box<Term>),
    Const(Constant),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Name::from(name))
    }

    pub fn lam(binder: &str, body: Term) -> Term {
        Term::Lam(Name::from(binder), Box::new(body))
    }

    pub fn app(function: Term, argument: Term) -> Term {
        Term::App(Box::new(function), Box::new(argument))
    }

    /// `(head) a1 ... an`
    pub fn apps(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    /// `λx1 ... λxn body`
    pub fn lams<N: AsRef<str>>(binders: &[N], body: Term) -> Term {
        binders
            .iter()
            .rev()
            .fold(body, |acc, x| Term::lam(x.as_ref(), acc))
    }

    pub fn seed(family: Family, level: usize) -> Term {
        Term::Const(Constant::seed(family, level))
    }

    /// `(u)^k v`
    pub fn iterate(u: &Term, k: usize, v: Term) -> Term {
        (0..k).fold(v, |acc, _| Term::app(u.clone(), acc))
    }

    /// Splits an application spine into its head and arguments.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Term::App(f, a) = cur {
            args.push(a.as_ref());
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    pub fn is_var(&self, name: &str) -> bool {
        matches!(self, Term::Var(x) if x.as_ref() == name)
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Lam(_, b) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
            Term::Const(c) => 1 + c.payload.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Visits every constant occurrence, including those nested in payloads.
    pub fn any_constant(&self, pred: &mut impl FnMut(&Constant) -> bool) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Lam(_, b) => b.any_constant(pred),
            Term::App(f, a) => f.any_constant(pred) || a.any_constant(pred),
            Term::Const(c) => pred(c) || c.payload.iter().any(|p| p.any_constant(pred)),
        }
    }

    pub fn has_constants(&self) -> bool {
        self.any_constant(&mut |_| true)
    }

    pub fn has_family(&self, family: Family) -> bool {
        self.any_constant(&mut |c| c.family == family)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::pretty(self))
    }
}

/// The Church integer `λf.λx.(f)^n x`.
pub fn mk_church(n: usize) -> Term {
    Term::lam(
        "f",
        Term::lam("x", Term::iterate(&Term::var("f"), n, Term::var("x"))),
    )
}

/// Recognizes a Church integer up to α-equivalence.
pub fn church_value(t: &Term) -> Option<usize> {
    let Term::Lam(f, body) = t else { return None };
    let Term::Lam(x, body) = body.as_ref() else {
        return None;
    };
    if f == x {
        return None;
    }
    let mut n = 0;
    let mut cur = body.as_ref();
    loop {
        match cur {
            Term::Var(y) if y == x => return Some(n),
            Term::App(g, a) if g.is_var(f) => {
                n += 1;
                cur = a;
            }
            _ => return None,
        }
    }
}

pub fn free_names(t: &Term) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    let mut bound = Vec::new();
    collect_free(t, &mut bound, &mut out);
    out
}

fn collect_free(t: &Term, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
    match t {
        Term::Var(x) => {
            if !bound.contains(x) {
                out.insert(x.clone());
            }
        }
        Term::Lam(x, b) => {
            bound.push(x.clone());
            collect_free(b, bound, out);
            bound.pop();
        }
        Term::App(f, a) => {
            collect_free(f, bound, out);
            collect_free(a, bound, out);
        }
        Term::Const(c) => {
            for p in &c.payload {
                collect_free(p, bound, out);
            }
        }
    }
}

pub fn occurs_free(t: &Term, name: &str) -> bool {
    match t {
        Term::Var(x) => x.as_ref() == name,
        Term::Lam(x, b) => x.as_ref() != name && occurs_free(b, name),
        Term::App(f, a) => occurs_free(f, name) || occurs_free(a, name),
        Term::Const(c) => c.payload.iter().any(|p| occurs_free(p, name)),
    }
}

/// No free variables and no constants anywhere.
pub fn is_closed_pure(t: &Term) -> bool {
    !t.has_constants() && free_names(t).is_empty()
}

pub fn alpha_eq(t: &Term, u: &Term) -> bool {
    alpha_rec(t, u, &mut Vec::new(), &mut Vec::new())
}

fn alpha_rec<'a>(t: &'a Term, u: &'a Term, lt: &mut Vec<&'a Name>, lu: &mut Vec<&'a Name>) -> bool {
    match (t, u) {
        (Term::Var(x), Term::Var(y)) => {
            match (lt.iter().rposition(|b| *b == x), lu.iter().rposition(|b| *b == y)) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            }
        }
        (Term::Lam(x, b), Term::Lam(y, c)) => {
            lt.push(x);
            lu.push(y);
            let eq = alpha_rec(b, c, lt, lu);
            lt.pop();
            lu.pop();
            eq
        }
        (Term::App(f, a), Term::App(g, b)) => alpha_rec(f, g, lt, lu) && alpha_rec(a, b, lt, lu),
        (Term::Const(c), Term::Const(d)) => {
            c.family == d.family
                && c.level == d.level
                && c.payload.len() == d.payload.len()
                && c.payload
                    .iter()
                    .zip(&d.payload)
                    .all(|(p, q)| alpha_rec(p, q, lt, lu))
        }
        _ => false,
    }
}

/// Picks a name derived from `base` that is not in `avoid`. Deterministic:
/// the trailing digits of `base` are replaced by the smallest free suffix.
pub fn fresh_name(base: &str, avoid: &BTreeSet<Name>) -> Name {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1..)
        .map(|i| Name::from(format!("{stem}{i}")))
        .find(|cand| !avoid.contains(cand))
        .expect("unbounded suffix search")
}

/// A simultaneous substitution of terms for free variables.
pub type Substitution = BTreeMap<Name, Term>;

/// Capture-avoiding `t[u/x]`. Traverses constant payloads.
pub fn substitute(t: &Term, x: &str, u: &Term) -> Term {
    let mut sigma = Substitution::new();
    sigma.insert(Name::from(x), u.clone());
    substitute_many(t, &sigma)
}

/// Capture-avoiding simultaneous substitution.
pub fn substitute_many(t: &Term, sigma: &Substitution) -> Term {
    if sigma.is_empty() {
        return t.clone();
    }
    let mut range_free = BTreeSet::new();
    for u in sigma.values() {
        range_free.extend(free_names(u));
    }
    subst_rec(t, sigma, &range_free)
}

fn subst_rec(t: &Term, sigma: &Substitution, range_free: &BTreeSet<Name>) -> Term {
    match t {
        Term::Var(y) => sigma.get(y).cloned().unwrap_or_else(|| t.clone()),
        Term::App(f, a) => Term::App(
            Box::new(subst_rec(f, sigma, range_free)),
            Box::new(subst_rec(a, sigma, range_free)),
        ),
        Term::Const(c) => Term::Const(c.map_payload(|p| subst_rec(p, sigma, range_free))),
        Term::Lam(y, body) => {
            let shadowed;
            let sigma = if sigma.contains_key(y) {
                shadowed = {
                    let mut s = sigma.clone();
                    s.remove(y);
                    s
                };
                &shadowed
            } else {
                sigma
            };
            if sigma.is_empty() || !sigma.keys().any(|k| occurs_free(body, k)) {
                return t.clone();
            }
            let captured = range_free.contains(y)
                && sigma
                    .iter()
                    .any(|(k, u)| occurs_free(u, y) && occurs_free(body, k));
            if captured {
                let mut avoid = free_names(body);
                avoid.extend(range_free.iter().cloned());
                avoid.extend(sigma.keys().cloned());
                let z = fresh_name(y, &avoid);
                let renamed = substitute(body, y, &Term::Var(z.clone()));
                Term::Lam(z, Box::new(subst_rec(&renamed, sigma, range_free)))
            } else {
                Term::Lam(y.clone(), Box::new(subst_rec(body, sigma, range_free)))
            }
        }
    }
}

/// Replaces constants by terms, renaming binders that would capture a
/// name in `replacement_free`. `f` returns `None` to keep a constant (its
/// payload is still rewritten).
pub fn replace_constants(
    t: &Term,
    replacement_free: &BTreeSet<Name>,
    f: &mut impl FnMut(&Constant) -> Option<Term>,
) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::App(g, a) => Term::app(
            replace_constants(g, replacement_free, f),
            replace_constants(a, replacement_free, f),
        ),
        Term::Const(c) => match f(c) {
            Some(r) => r,
            None => Term::Const(c.map_payload(|p| replace_constants(p, replacement_free, f))),
        },
        Term::Lam(y, body) => {
            if replacement_free.contains(y) {
                let mut avoid = free_names(body);
                avoid.extend(replacement_free.iter().cloned());
                let z = fresh_name(y, &avoid);
                let renamed = substitute(body, y, &Term::Var(z.clone()));
                Term::Lam(z, Box::new(replace_constants(&renamed, replacement_free, f)))
            } else {
                Term::Lam(y.clone(), Box::new(replace_constants(body, replacement_free, f)))
            }
        }
    }
}
