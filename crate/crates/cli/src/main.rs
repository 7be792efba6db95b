mod corpus;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use lamstore::builtins::{s1, successor_named};
use lamstore::reduce::{check_successor, head_reduce, normalize};
use lamstore::report::{to_json, SuccessorView, SummaryView, TheoremView};
use lamstore::storage::{check_operator, CheckSummary, RunReport, Verdict};
use lamstore::syntax::pretty_abbreviated;
use lamstore::theorem::{verify_theorem1_instance, verify_theorem2_instance, verify_theorem3, TheoremReport};
use lamstore::{parse_open, pretty_sugared, Aggregate, Env, Family, Limits, Term};

#[derive(Parser)]
#[command(
    name = "lamstore",
    version,
    about = "Check storage operators by running them on symbolic numerals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest n to check
    #[arg(long, global = true, default_value_t = 8)]
    n_max: usize,
    /// Successor used by the prelude and by X-runs (name or term)
    #[arg(long, global = true, default_value = "S1")]
    succ: String,
    #[arg(long, global = true)]
    head_fuel: Option<usize>,
    #[arg(long, global = true)]
    macro_fuel: Option<usize>,
    #[arg(long, global = true)]
    norm_fuel: Option<usize>,
    /// Definition file, loaded after the prelude; repeatable
    #[arg(long, global = true)]
    defs: Vec<PathBuf>,
    #[arg(long, global = true)]
    json: bool,
    /// Include every head reduction and transform
    #[arg(long, global = true)]
    trace: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a term and print it back
    Parse { term: String },
    /// Head-reduce a term to head normal form
    Reduce { term: String },
    /// Normal-order reduce a term to β-normal form
    Normalize { term: String },
    /// Check (S) k ≃β k+1 for k up to --k-max
    CheckSuccessor {
        /// Defaults to --succ
        term: Option<String>,
        #[arg(long, default_value_t = 10)]
        k_max: usize,
    },
    /// Run the x-rules for every n up to --n-max
    CheckStorage { term: String },
    /// Run the X-rules with --succ for every n up to --n-max
    CheckSStorage { term: String },
    /// x-run success implies X-run success with the same τ
    Theorem1 { term: String },
    /// x-run and X-run with S1 agree step by step
    Theorem2 { term: String },
    /// The builtin counterexample T3
    Theorem3,
    /// Check every builtin claim
    Corpus,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn limits(cli: &Cli) -> Result<Limits> {
    let d = Limits::default();
    Limits::new(
        cli.head_fuel.unwrap_or(d.head_fuel),
        cli.macro_fuel.unwrap_or(d.macro_fuel),
        cli.norm_fuel.unwrap_or(d.norm_fuel),
    )
    .context("fuel limits must be positive")
}

fn load_defs(env: &mut Env, paths: &[PathBuf]) -> Result<()> {
    for path in paths {
        let src = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        env.load_definitions(&src)
            .with_context(|| format!("in {}", path.display()))?;
    }
    Ok(())
}

/// Returns the successor and an environment with the prelude instantiated
/// at it plus every definition file.
fn environment(cli: &Cli) -> Result<(Term, Env)> {
    let successor = match successor_named(&cli.succ) {
        Some(s) => s,
        None => {
            let mut env = Env::prelude(&s1());
            load_defs(&mut env, &cli.defs)?;
            parse_open(&cli.succ, &env).context("parsing --succ")?
        }
    };
    let mut env = Env::prelude(&successor);
    load_defs(&mut env, &cli.defs)?;
    Ok((successor, env))
}

fn term_arg(text: &str, env: &Env) -> Result<Term> {
    parse_open(text, env).with_context(|| format!("parsing `{text}`"))
}

#[derive(Serialize)]
struct TermView {
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    term: Option<String>,
}

fn emit<T: Serialize>(view: &T) {
    println!("{}", to_json(view));
}

fn run(cli: &Cli) -> Result<i32> {
    let limits = limits(cli)?;
    let (successor, env) = environment(cli)?;
    match &cli.command {
        Command::Parse { term } => {
            let t = term_arg(term, &env)?;
            if cli.json {
                emit(&TermView {
                    verdict: "parsed",
                    steps: None,
                    term: Some(pretty_sugared(&t)),
                });
            } else {
                println!("{}", pretty_abbreviated(&t, &env));
            }
            Ok(0)
        }
        Command::Reduce { term } => {
            let t = term_arg(term, &env)?;
            let (result, steps, code) = match head_reduce(&t, &limits) {
                Ok((v, k)) => (v, k, 0),
                Err(e) => (e.partial, e.steps, 2),
            };
            if cli.json {
                emit(&TermView {
                    verdict: if code == 0 { "hnf" } else { "fuel_exhausted" },
                    steps: Some(steps),
                    term: Some(pretty_sugared(&result)),
                });
            } else if code == 0 {
                println!("{}\nhead steps: {steps}", pretty_abbreviated(&result, &env));
            } else {
                println!(
                    "{}\nfuel exhausted after {steps} head steps",
                    pretty_abbreviated(&result, &env)
                );
            }
            Ok(code)
        }
        Command::Normalize { term } => {
            let t = term_arg(term, &env)?;
            match normalize(&t, &limits) {
                Ok(nf) => {
                    if cli.json {
                        emit(&TermView {
                            verdict: "normal",
                            steps: None,
                            term: Some(pretty_sugared(&nf)),
                        });
                    } else {
                        println!("{}", pretty_abbreviated(&nf, &env));
                    }
                    Ok(0)
                }
                Err(e) => {
                    if cli.json {
                        emit(&TermView {
                            verdict: "fuel_exhausted",
                            steps: Some(e.steps),
                            term: None,
                        });
                    } else {
                        println!("fuel exhausted after {} steps", e.steps);
                    }
                    Ok(2)
                }
            }
        }
        Command::CheckSuccessor { term, k_max } => {
            let s = match term {
                Some(text) => term_arg(text, &env)?,
                None => successor.clone(),
            };
            let Ok(r) = check_successor(&s, *k_max, &limits) else {
                bail!("successor candidate must be closed and constant-free");
            };
            if cli.json {
                emit(&SuccessorView::new(&s, &r));
            } else {
                for (k, e) in r.outcomes.iter().enumerate() {
                    println!("k={k}  {e:?}");
                }
                match r.first_failure() {
                    None => println!("successor for every k <= {k_max}"),
                    Some((k, e)) => println!("not shown a successor: k={k} is {e:?}"),
                }
            }
            Ok(r.exit_code())
        }
        Command::CheckStorage { term } => {
            let op = term_arg(term, &env)?;
            let s = check_operator(&op, Family::Lower, None, cli.n_max, &limits)?;
            print_summary(cli, &env, &s);
            Ok(s.exit_code())
        }
        Command::CheckSStorage { term } => {
            let op = term_arg(term, &env)?;
            let s = check_operator(&op, Family::Upper, Some(&successor), cli.n_max, &limits)?;
            print_summary(cli, &env, &s);
            Ok(s.exit_code())
        }
        Command::Theorem1 { term } => {
            let op = term_arg(term, &env)?;
            let r = verify_theorem1_instance(&op, &successor, cli.n_max, &limits)?;
            print_theorem(cli, &r);
            Ok(r.exit_code())
        }
        Command::Theorem2 { term } => {
            let op = term_arg(term, &env)?;
            let r = verify_theorem2_instance(&op, cli.n_max, &limits)?;
            print_theorem(cli, &r);
            Ok(r.exit_code())
        }
        Command::Theorem3 => {
            let r = verify_theorem3(cli.n_max, &limits);
            print_theorem(cli, &r);
            Ok(r.exit_code())
        }
        Command::Corpus => {
            let r = corpus::run_corpus(cli.n_max, &limits);
            if cli.json {
                emit(&r);
            } else {
                for row in &r.claims {
                    println!(
                        "{:<9} {:<40} {}",
                        format!("{:?}", row.status).to_lowercase(),
                        row.claim,
                        row.detail
                    );
                }
                println!("corpus: {:?}", r.status);
            }
            Ok(r.exit_code())
        }
    }
}

fn print_summary(cli: &Cli, env: &Env, s: &CheckSummary) {
    if cli.json {
        emit(&SummaryView::new(s, cli.trace));
        return;
    }
    for r in &s.runs {
        println!("{}", run_line(r, env));
        if cli.trace {
            print_trace(r, env);
        }
    }
    match s.aggregate {
        Aggregate::AllPass => println!("all pass for n <= {}", s.n_max),
        Aggregate::FirstFailureAt { n, reason } => println!("first failure at n={n}: {reason}"),
        Aggregate::Inconclusive { n, stage } => println!("inconclusive at n={n}: fuel exhausted ({stage})"),
    }
}

fn run_line(r: &RunReport, env: &Env) -> String {
    let tau = |t: &Term| format!("  tau = {}", pretty_abbreviated(t, env));
    match &r.verdict {
        Verdict::Success { tau: t } => format!("n={}  success{}", r.n, tau(t)),
        Verdict::Fail { reason, tau: t } => {
            format!(
                "n={}  fail {reason}{}",
                r.n,
                t.as_ref().map(tau).unwrap_or_default()
            )
        }
        Verdict::FuelExhausted { stage } => format!("n={}  fuel exhausted ({stage})", r.n),
    }
}

fn print_trace(r: &RunReport, env: &Env) {
    let show = |t: &Term| pretty_abbreviated(t, env);
    for (i, step) in r.trace.iter().enumerate() {
        let arrow = match step.transform {
            Some(t) => format!("—{t:?}→"),
            None => "—stop".to_string(),
        };
        let next = match r.trace.get(i + 1) {
            Some(s) => show(&s.u),
            None => String::new(),
        };
        let line = format!(
            "  [{}]  {}  ≻({})  {}  {}  {}",
            i + 1,
            show(&step.u),
            step.beta_steps,
            show(&step.v),
            arrow,
            next
        );
        println!("{}", line.trim_end());
    }
    if let Verdict::FuelExhausted { .. } = r.verdict {
        println!("  ...");
    }
}

fn print_theorem(cli: &Cli, r: &TheoremReport) {
    if cli.json {
        emit(&TheoremView::from(r));
        return;
    }
    for c in &r.checks {
        let n = c.n.map(|n| format!("n={n}  ")).unwrap_or_default();
        let outcome = format!("{:?}", c.outcome).to_lowercase();
        if c.detail.is_empty() {
            println!("[{outcome}] {n}{}", c.name);
        } else {
            println!("[{outcome}] {n}{}: {}", c.name, c.detail);
        }
    }
    println!("{}: {}", r.theorem, format!("{:?}", r.outcome()).to_lowercase());
}
