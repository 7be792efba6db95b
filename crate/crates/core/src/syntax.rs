//! Concrete syntax for terms and definition files.
//!
//! ```text
//! term  := lam | app
//! lam   := ("\" | "λ") ident+ "." term
//! app   := atom atom*
//! atom  := ident | "#" nat | konst | "(" term ")"
//! konst := ("x" | "X") "[" nat ( ";" term ("," term)* )? "]"
//! ```
//!
//! A trailing λ-abstraction is accepted as the last argument of an
//! application (`f \x. x`). Definition files are sequences of
//! `def name = term ;` with `#` line comments; `#` immediately followed by
//! a digit is always a numeral literal.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::term::{alpha_eq, church_value, is_closed_pure, mk_church, Constant, Family, Name, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unbound name `{name}` at {line}:{column}")]
    Unbound {
        name: String,
        line: usize,
        column: usize,
    },
}

/// A named, closed definition.
#[derive(Debug, Clone, PartialEq)]
pub struct Binding {
    pub name: Name,
    pub value: Term,
}

/// Named definitions in declaration order; later names shadow earlier ones.
#[derive(Debug, Clone, Default)]
pub struct Env {
    bindings: Vec<Binding>,
}

impl Env {
    pub fn empty() -> Self {
        Env::default()
    }

    /// The builtin definitions with every successor-dependent term
    /// instantiated at `successor`.
    pub fn prelude(successor: &Term) -> Self {
        let mut env = Env::empty();
        env.load_definitions(PRELUDE_BASE).expect("base prelude parses");
        env.push("S", successor.clone());
        env.load_definitions(PRELUDE_OPERATORS)
            .expect("operator prelude parses");
        env
    }

    /// The prelude at `S1`.
    pub fn standard() -> Self {
        Env::prelude(&crate::builtins::s1())
    }

    pub fn bindings(&self) -> &[Binding] {
        &self.bindings
    }

    pub fn lookup(&self, name: &str) -> Option<&Term> {
        self.bindings
            .iter()
            .rev()
            .find(|b| b.name.as_ref() == name)
            .map(|b| &b.value)
    }

    pub fn push(&mut self, name: &str, value: Term) {
        self.bindings.push(Binding {
            name: Name::from(name),
            value,
        });
    }

    /// Parses `def name = term ;` entries and appends them. Each definition
    /// may only refer to names defined before it.
    pub fn load_definitions(&mut self, source: &str) -> Result<usize, ParseError> {
        let mut parser = Parser::new(source, self, false, true)?;
        let mut defined = Vec::new();
        while parser.peek() != &Tok::Eof {
            parser.expect_keyword("def")?;
            let name = parser.expect_ident()?;
            parser.expect(&Tok::Equals, "`=`")?;
            let value = parser.term()?;
            parser.expect(&Tok::Semi, "`;`")?;
            defined.push(Binding {
                name: Name::from(name.as_str()),
                value: value.clone(),
            });
            parser.env_extra.push(Binding {
                name: Name::from(name.as_str()),
                value,
            });
        }
        let count = defined.len();
        self.bindings.extend(defined);
        Ok(count)
    }
}

const PRELUDE_BASE: &str = r"
def I  = \x. x;
def S1 = \n f x. f (n f x);
def S2 = \n f x. n f (f x);
";

const PRELUDE_OPERATORS: &str = r"
def G  = \x y. x (\z. y (S z));
def d0 = \f. f #0;
def T1 = \n. n G d0;
def F  = \x y. x (S y);
def T2 = \n f. n F f #0;
def a3 = \x y z. x (z (x I I (\x. #0))) (\x. S (z x));
def b3 = \x y z. z x;
def T3 = \x. x a3 b3 #0 S;
";

/// Parses a term; every name must be λ-bound or defined in `env`.
pub fn parse(text: &str, env: &Env) -> Result<Term, ParseError> {
    parse_with(text, env, false)
}

/// Like [`parse`], but unknown names become free variables.
pub fn parse_open(text: &str, env: &Env) -> Result<Term, ParseError> {
    parse_with(text, env, true)
}

fn parse_with(text: &str, env: &Env, open: bool) -> Result<Term, ParseError> {
    let mut parser = Parser::new(text, env, open, false)?;
    let t = parser.term()?;
    if parser.peek() != &Tok::Eof {
        return Err(parser.error_here("unexpected trailing input"));
    }
    Ok(t)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Lambda,
    Dot,
    LParen,
    RParen,
    RBracket,
    Semi,
    Comma,
    Equals,
    Numeral(usize),
    Nat(usize),
    Konst(Family),
    Ident(String),
    Eof,
}

impl Tok {
    fn starts_atom(&self) -> bool {
        matches!(
            self,
            Tok::Ident(_) | Tok::Numeral(_) | Tok::Konst(_) | Tok::LParen
        )
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, comments: bool) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, column, message: String| ParseError::Syntax {
        line,
        column,
        message,
    };
    let read_nat = |i: &mut usize, col: &mut usize| -> Option<usize> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        *col += *i - start;
        chars[start..*i].iter().collect::<String>().parse().ok()
    };
    while i < chars.len() {
        let c = chars[i];
        let (l, cl) = (line, col);
        let single = |tok| Spanned {
            tok,
            line: l,
            column: cl,
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
                continue;
            }
            '\\' | 'λ' => out.push(single(Tok::Lambda)),
            '.' => out.push(single(Tok::Dot)),
            '(' => out.push(single(Tok::LParen)),
            ')' => out.push(single(Tok::RParen)),
            ']' => out.push(single(Tok::RBracket)),
            ';' => out.push(single(Tok::Semi)),
            ',' => out.push(single(Tok::Comma)),
            '=' => out.push(single(Tok::Equals)),
            '#' => {
                if chars.get(i + 1).is_some_and(char::is_ascii_digit) {
                    i += 1;
                    col += 1;
                    let n =
                        read_nat(&mut i, &mut col).ok_or_else(|| err(l, cl, "numeral too large".into()))?;
                    out.push(single(Tok::Numeral(n)));
                    continue;
                }
                if comments {
                    while i < chars.len() && chars[i] != '\n' {
                        i += 1;
                    }
                    continue;
                }
                return Err(err(l, cl, "`#` must be followed by a numeral".into()));
            }
            c if c.is_ascii_digit() => {
                let n = read_nat(&mut i, &mut col).ok_or_else(|| err(l, cl, "number too large".into()))?;
                out.push(single(Tok::Nat(n)));
                continue;
            }
            c if c.is_alphabetic() => {
                if (c == 'x' || c == 'X') && chars.get(i + 1) == Some(&'[') {
                    let family = if c == 'x' { Family::Lower } else { Family::Upper };
                    out.push(single(Tok::Konst(family)));
                    i += 2;
                    col += 2;
                    continue;
                }
                let start = i;
                while i < chars.len()
                    && chars[i] != 'λ'
                    && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                col += i - start;
                out.push(single(Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => return Err(err(l, cl, format!("unexpected character `{other}`"))),
        }
        i += 1;
        col += 1;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser<'e> {
    toks: Vec<Spanned>,
    pos: usize,
    env: &'e Env,
    env_extra: Vec<Binding>,
    scope: Vec<Name>,
    open: bool,
}

impl<'e> Parser<'e> {
    fn new(text: &str, env: &'e Env, open: bool, comments: bool) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text, comments)?,
            pos: 0,
            env,
            env_extra: Vec::new(),
            scope: Vec::new(),
            open,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: &str) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError::Syntax {
            line: s.line,
            column: s.column,
            message: format!("{message} (found {})", describe(&s.tok)),
        }
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error_here(&format!("expected {what}")))
        }
    }

    fn expect_ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            // `x` and `X` are plain identifiers unless followed by `[`.
            _ => Err(self.error_here("expected identifier")),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => Err(self.error_here(&format!("expected `{kw}`"))),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        if self.peek() == &Tok::Lambda {
            return self.lambda();
        }
        let mut t = self.atom()?;
        loop {
            if self.peek().starts_atom() {
                let a = self.atom()?;
                t = Term::app(t, a);
            } else if self.peek() == &Tok::Lambda {
                let a = self.lambda()?;
                return Ok(Term::app(t, a));
            } else {
                return Ok(t);
            }
        }
    }

    fn lambda(&mut self) -> Result<Term, ParseError> {
        self.expect(&Tok::Lambda, "`\\`")?;
        let mut binders = vec![self.expect_ident()?];
        while let Tok::Ident(s) = self.peek().clone() {
            self.bump();
            binders.push(s);
        }
        self.expect(&Tok::Dot, "`.`")?;
        let depth = self.scope.len();
        self.scope.extend(binders.iter().map(|b| Name::from(b.as_str())));
        let body = self.term();
        self.scope.truncate(depth);
        Ok(Term::lams(&binders, body?))
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let here = (self.toks[self.pos].line, self.toks[self.pos].column);
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                self.resolve(&name, here)
            }
            Tok::Numeral(n) => {
                self.bump();
                Ok(mk_church(n))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::Konst(family) => {
                self.bump();
                let Tok::Nat(level) = *self.peek() else {
                    return Err(self.error_here("expected constant level"));
                };
                self.bump();
                let mut payload = Vec::new();
                if self.peek() == &Tok::Semi {
                    self.bump();
                    payload.push(self.term()?);
                    while self.peek() == &Tok::Comma {
                        self.bump();
                        payload.push(self.term()?);
                    }
                }
                self.expect(&Tok::RBracket, "`]`")?;
                Constant::from_parts(family, level, payload)
                    .map(Term::Const)
                    .ok_or_else(|| ParseError::Syntax {
                        line: here.0,
                        column: here.1,
                        message: "a stored constant needs at least two payload terms".into(),
                    })
            }
            _ => Err(self.error_here("expected a term")),
        }
    }

    fn resolve(&self, name: &str, (line, column): (usize, usize)) -> Result<Term, ParseError> {
        if self.scope.iter().any(|b| b.as_ref() == name) {
            return Ok(Term::var(name));
        }
        if let Some(b) = self.env_extra.iter().rev().find(|b| b.name.as_ref() == name) {
            return Ok(b.value.clone());
        }
        if let Some(t) = self.env.lookup(name) {
            return Ok(t.clone());
        }
        if self.open {
            return Ok(Term::var(name));
        }
        Err(ParseError::Unbound {
            name: name.to_string(),
            line,
            column,
        })
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Lambda => "`\\`".into(),
        Tok::Dot => "`.`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::RBracket => "`]`".into(),
        Tok::Semi => "`;`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Equals => "`=`".into(),
        Tok::Numeral(n) => format!("`#{n}`"),
        Tok::Nat(n) => format!("`{n}`"),
        Tok::Konst(f) => format!("`{f}[`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Eof => "end of input".into(),
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Ctx {
    Top,
    Fun,
    Arg,
}

/// Prints a term with minimal parentheses.
pub fn pretty(t: &Term) -> String {
    let mut s = String::new();
    write_term(t, Ctx::Top, &Style::default(), &mut s);
    s
}

/// Like [`pretty`], but prints Church integers as `#n`.
pub fn pretty_sugared(t: &Term) -> String {
    let style = Style {
        sugar: true,
        ..Style::default()
    };
    let mut s = String::new();
    write_term(t, Ctx::Top, &style, &mut s);
    s
}

/// Like [`pretty_sugared`], but also prints any subterm α-equivalent to a
/// closed binding of `env` as that binding's name. The first matching
/// binding wins; numerals keep their `#n` form.
pub fn pretty_abbreviated(t: &Term, env: &Env) -> String {
    let mut seen = BTreeSet::new();
    let mut names = Vec::new();
    for b in env.bindings().iter().rev() {
        if seen.insert(b.name.clone()) && church_value(&b.value).is_none() && is_closed_pure(&b.value) {
            names.push((b.name.clone(), b.value.clone()));
        }
    }
    names.reverse();
    let style = Style { sugar: true, names };
    let mut s = String::new();
    write_term(t, Ctx::Top, &style, &mut s);
    s
}

#[derive(Default)]
struct Style {
    sugar: bool,
    names: Vec<(Name, Term)>,
}

impl Style {
    fn shorthand(&self, t: &Term) -> Option<String> {
        if !self.sugar {
            return None;
        }
        if let Some(n) = church_value(t) {
            return Some(format!("#{n}"));
        }
        if matches!(t, Term::Lam(..)) {
            let (name, _) = self.names.iter().find(|(_, v)| alpha_eq(v, t))?;
            return Some(name.to_string());
        }
        None
    }
}

fn write_term(t: &Term, ctx: Ctx, style: &Style, out: &mut String) {
    if let Some(s) = style.shorthand(t) {
        out.push_str(&s);
        return;
    }
    match t {
        Term::Var(x) => out.push_str(x),
        Term::Const(c) => {
            let _ = write!(out, "{}[{}", c.family(), c.level());
            for (i, p) in c.payload().iter().enumerate() {
                out.push_str(if i == 0 { "; " } else { ", " });
                write_term(p, Ctx::Top, style, out);
            }
            out.push(']');
        }
        Term::Lam(..) => {
            let paren = ctx != Ctx::Top;
            if paren {
                out.push('(');
            }
            out.push('\\');
            let mut cur = t;
            let mut first = true;
            while let Term::Lam(x, b) = cur {
                if !first && style.shorthand(cur).is_some() {
                    break;
                }
                if !first {
                    out.push(' ');
                }
                out.push_str(x);
                first = false;
                cur = b;
            }
            out.push_str(". ");
            write_term(cur, Ctx::Top, style, out);
            if paren {
                out.push(')');
            }
        }
        Term::App(..) => {
            let paren = ctx == Ctx::Arg;
            if paren {
                out.push('(');
            }
            let (head, args) = t.spine();
            write_term(head, Ctx::Fun, style, out);
            for a in args {
                out.push(' ');
                write_term(a, Ctx::Arg, style, out);
            }
            if paren {
                out.push(')');
            }
        }
    }
}
