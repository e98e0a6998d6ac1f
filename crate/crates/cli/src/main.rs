//! `delannoy-lab`: compute Delannoy/Schröder objects and run exact
//! verification sweeps.
//!
//! Exit status: 0 when every check passed, 1 when at least one witness was
//! reported, 2 on usage or domain errors.

mod emit;
mod lemmas;
mod span;

use std::io::{self, BufWriter, Write};
use std::num::NonZeroUsize;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use delannoy_core::sequences::family_poly;
use delannoy_core::theorems::{applies, check, sharpness_probe};
use delannoy_core::{CoeffTable, Family, Integer, PolyCache, Record, SumSpec, TheoremId};
use rayon::prelude::*;

use crate::emit::{emit, Format};
use crate::lemmas::LemmaArgs;
use crate::span::Span;

#[derive(Parser)]
#[command(name = "delannoy-lab", version)]
#[command(about = "Exact verification of divisibility properties of Delannoy and Schröder polynomials")]
struct Cli {
    /// Worker threads (default: available parallelism)
    #[arg(long, global = true, env = "DELANNOY_LAB_JOBS", value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print P_n^(h)(x)^m for the chosen family
    Poly {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        h: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Print the coefficient list as JSON instead of the polynomial
        #[arg(long)]
        json: bool,
    },
    /// Dump a slice of one coefficient table
    Coeff(CoeffArgs),
    /// Run a lemma-level check over parameter ranges
    Lemma {
        #[command(flatten)]
        lemma: LemmaArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check a divisibility theorem over a grid of sums
    Verify(SweepArgs),
    /// Re-check sums against n(n+1)(n+2) and report the failures
    Probe(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EpsChoice {
    Both,
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyChoice {
    D,
    S,
    Both,
}

#[derive(Debug, Clone, Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value = "jsonl")]
    format: Format,
    /// Stop at the first failing check
    #[arg(long)]
    fail_fast: bool,
    /// CI mode; implies --fail-fast
    #[arg(long)]
    ci: bool,
}

impl RunArgs {
    fn fail_fast(&self) -> bool {
        self.fail_fast || self.ci
    }
}

#[derive(Debug, Clone, Args)]
struct SweepArgs {
    /// 2.1, 2.2, 3.1, 5.3 or chen-guo
    #[arg(long)]
    theorem: TheoremId,
    /// Defaults to the family the theorem concerns (D for chen-guo, both for 5.3)
    #[arg(long, value_enum, ignore_case = true)]
    family: Option<FamilyChoice>,
    #[arg(long, default_value = "1..25")]
    n: Span,
    #[arg(long, default_value = "1..3")]
    h: Span,
    #[arg(long, default_value = "1..3")]
    m: Span,
    /// Defaults to 1..3, or 1 for 5.3
    #[arg(long)]
    a: Option<Span>,
    #[arg(long, value_enum, default_value = "both")]
    eps: EpsChoice,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoeffKind {
    #[value(name = "C")]
    C,
    #[value(name = "K")]
    K,
    #[value(name = "b")]
    BSmall,
    #[value(name = "a")]
    ASmall,
    #[value(name = "Bpair")]
    Bpair,
    #[value(name = "Apair")]
    Apair,
    #[value(name = "Bmulti")]
    Bmulti,
    #[value(name = "Amulti")]
    Amulti,
    #[value(name = "Btilde")]
    Btilde,
    #[value(name = "Atilde")]
    Atilde,
}

#[derive(Debug, Clone, Args)]
struct CoeffArgs {
    #[arg(long, value_enum)]
    kind: CoeffKind,
    #[arg(long)]
    l: Option<u32>,
    #[arg(long)]
    a: Option<u32>,
    #[arg(long)]
    u: Option<u32>,
    #[arg(long)]
    i: Option<u32>,
    #[arg(long)]
    j: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long, default_value_t = 1)]
    h: u32,
    /// Comma-separated index tuple for the multi and tilde tables
    #[arg(long, value_delimiter = ',')]
    indices: Vec<u32>,
}

enum Outcome {
    Clean,
    Witnesses,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Witnesses) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let jobs = match cli.jobs {
        Some(j) => j as usize,
        None => std::thread::available_parallelism().map(NonZeroUsize::get).unwrap_or(1),
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().context("building worker pool")?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Poly { family, n, h, m, json } => {
            let p = family_poly(family, n, h)?.pow(m);
            if json {
                serde_json::to_writer(&mut out, &p)?;
                writeln!(out)?;
            } else {
                writeln!(out, "{p}")?;
            }
            out.flush()?;
            Ok(Outcome::Clean)
        }
        Command::Coeff(args) => {
            coeff(&args, &mut out)?;
            out.flush()?;
            Ok(Outcome::Clean)
        }
        Command::Lemma { lemma, run } => {
            let jobs = lemmas::jobs(&lemma)?;
            let table = CoeffTable::new();
            let records = pool.install(|| {
                run_ordered(&jobs, run.fail_fast(), |job| job(&table).map(|r| Record::from(&r)).map_err(anyhow::Error::from))
            })?;
            finish(&records, run.format, &mut out)
        }
        Command::Verify(args) => {
            let specs = sweep_specs(&args)?;
            let cache = PolyCache::new();
            let records = pool.install(|| {
                run_ordered(&specs, args.run.fail_fast(), |s| check(args.theorem, s, &cache).map(|r| Record::from(&r)).map_err(anyhow::Error::from))
            })?;
            finish(&records, args.run.format, &mut out)
        }
        Command::Probe(args) => {
            let specs = sweep_specs(&args)?;
            let cache = PolyCache::new();
            let failures = pool.install(|| sharpness_probe(args.theorem, &specs, &cache))?;
            let records: Vec<Record> = failures.iter().map(Record::from).collect();
            emit(&records, args.run.format, &mut out)?;
            eprintln!("probe: {} of {} sums fail the modulus n(n+1)(n+2)", records.len(), specs.len());
            Ok(Outcome::Clean)
        }
    }
}

fn finish(records: &[Record], format: Format, out: &mut impl Write) -> Result<Outcome> {
    emit(records, format, out)?;
    Ok(if records.iter().all(|r| r.pass) { Outcome::Clean } else { Outcome::Witnesses })
}

/// Evaluates `items` in parallel and returns records in input order. With
/// `fail_fast`, work proceeds in chunks and output stops at the first failure,
/// so the emitted prefix does not depend on the worker count.
fn run_ordered<T: Sync>(items: &[T], fail_fast: bool, f: impl Fn(&T) -> Result<Record> + Sync) -> Result<Vec<Record>> {
    if !fail_fast {
        return items.par_iter().map(&f).collect();
    }
    let chunk = 4 * rayon::current_num_threads();
    let mut out = Vec::new();
    for part in items.chunks(chunk) {
        let records: Vec<Record> = part.par_iter().map(&f).collect::<Result<_>>()?;
        if let Some(pos) = records.iter().position(|r| !r.pass) {
            out.extend(records.into_iter().take(pos + 1));
            break;
        }
        out.extend(records);
    }
    Ok(out)
}

fn sweep_specs(args: &SweepArgs) -> Result<Vec<SumSpec>> {
    let families: &[Family] = match (args.family, args.theorem) {
        (Some(FamilyChoice::D), _) => &[Family::Delannoy],
        (Some(FamilyChoice::S), _) => &[Family::Schroder],
        (Some(FamilyChoice::Both), _) | (None, TheoremId::Conjecture) => &[Family::Delannoy, Family::Schroder],
        (None, TheoremId::Schroder) => &[Family::Schroder],
        (None, _) => &[Family::Delannoy],
    };
    let a = args.a.unwrap_or(if args.theorem == TheoremId::Conjecture { Span::new(1, 1) } else { Span::new(1, 3) });
    for (name, s) in [("n", args.n), ("h", args.h), ("m", args.m), ("a", a)] {
        if s.lo == 0 {
            bail!("--{name} must start at 1 or above (got {s})");
        }
    }
    let specs = SumSpec::grid(families, args.n.iter(), args.h.iter(), args.m.iter(), a.iter(), &args.eps.signs());
    let specs: Vec<SumSpec> = specs.into_iter().filter(|s| applies(args.theorem, s)).collect();
    if specs.is_empty() {
        bail!("no sums in the given ranges fall under theorem {}", args.theorem);
    }
    Ok(specs)
}

fn need(v: Option<u32>, name: &str) -> Result<u32> {
    v.ok_or_else(|| anyhow!("--{name} is required for this table"))
}

fn print_row(out: &mut impl Write, key: &str, row: &[Integer]) -> Result<()> {
    for (idx, v) in row.iter().enumerate() {
        if *v != Integer::from(0) {
            writeln!(out, "{key}={idx} {v}")?;
        }
    }
    Ok(())
}

fn coeff(args: &CoeffArgs, out: &mut impl Write) -> Result<()> {
    use delannoy_core::reduction::{a_pair, b_pair};
    let table = CoeffTable::new();
    let single = |out: &mut dyn Write, v: Integer| -> Result<()> { Ok(writeln!(out, "{v}")?) };
    let pair_row = |f: fn(u32, u32, u32) -> Integer, i: u32, j: u32| -> Vec<Integer> { (0..=i + j).map(|l| f(i, j, l)).collect() };
    let indices = || -> Result<&[u32]> {
        if args.indices.is_empty() {
            bail!("--indices is required for this table");
        }
        Ok(&args.indices)
    };
    match args.kind {
        CoeffKind::C => print_row(out, "u", &table.c_coeffs(need(args.l, "l")?, need(args.a, "a")?)?)?,
        CoeffKind::K => single(out, table.k_coeff(need(args.u, "u")?, need(args.l, "l")?, need(args.a, "a")?)?)?,
        CoeffKind::BSmall | CoeffKind::ASmall => {
            let i = need(args.i, "i")?;
            match (args.kind, args.t) {
                (CoeffKind::BSmall, Some(t)) => single(out, table.b_coeff(i, t, args.h)?)?,
                (CoeffKind::BSmall, None) => print_row(out, "t", &table.b_table(i, args.h)?)?,
                (_, Some(t)) => single(out, table.a_coeff(i, t, args.h)?)?,
                (_, None) => print_row(out, "t", &table.a_table(i, args.h)?)?,
            }
        }
        CoeffKind::Bpair | CoeffKind::Apair => {
            let f = if args.kind == CoeffKind::Bpair { b_pair } else { a_pair };
            let (i, j) = (need(args.i, "i")?, need(args.j, "j")?);
            match args.l {
                Some(l) => single(out, f(i, j, l))?,
                None => print_row(out, "l", &pair_row(f, i, j))?,
            }
        }
        CoeffKind::Bmulti | CoeffKind::Amulti | CoeffKind::Btilde | CoeffKind::Atilde => {
            let idx = indices()?;
            let row = match args.kind {
                CoeffKind::Bmulti => table.b_multi_row(idx)?,
                CoeffKind::Amulti => table.a_multi_row(idx)?,
                CoeffKind::Btilde => table.b_tilde_row(idx, args.h)?,
                _ => table.a_tilde_row(idx, args.h)?,
            };
            match args.l {
                Some(l) => single(out, delannoy_core::reduction::row_at(&row, l as usize))?,
                None => print_row(out, "l", &row)?,
            }
        }
    }
    Ok(())
}
