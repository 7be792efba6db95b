//! A laboratory for storage operators in the untyped λ-calculus.
//!
//! Terms may contain two families of symbolic numeral constants. Running an
//! operator `T` on a constant and alternating head reduction with constant
//! unfolding decides, for each `n` separately, whether `((T) n) f` reduces
//! to `(f) τ` with `τ ≃β n` for every representation of `n`, without ever
//! looking at how the numeral is represented.

pub mod builtins;
pub mod reduce;
pub mod report;
pub mod storage;
pub mod syntax;
pub mod term;
pub mod theorem;

pub use reduce::{beta_equiv, head_reduce, head_step, normalize, Equivalence, Limits};
pub use storage::{
    check_operator, run_check, Aggregate, CheckError, CheckSummary, FailReason, MacroStep, RunReport, Stage,
    Transform, Verdict,
};
pub use syntax::{parse, parse_open, pretty, pretty_sugared, Env, ParseError};
pub use term::{alpha_eq, mk_church, Constant, Family, Name, Term};
pub use theorem::{Check, Outcome, TheoremReport};
