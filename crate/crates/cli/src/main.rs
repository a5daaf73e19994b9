//! `kts`: certify, inspect and search recursive Kummer towers from the shell.
//!
//! Exit codes: 0 success, 1 input or I/O error, 2 well-formed but negative
//! answer (not certified, not related, fixture mismatch), 3 closure budget
//! exhausted.

mod cache;
mod manifest;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kts_core::fixtures::{run_fixture, FIXTURES};
use kts_core::notation::{parse_element, parse_poly};
use kts_core::search::{run_search, SearchConfig};
use kts_core::tower::{compute_closure, transform, verify_equivalence};
use kts_core::{certify, ClosureLimits, FieldCtx, KummerSpec, RecursionSpec};
use serde::Serialize;

use manifest::{write_csv, write_json, RunManifest};

#[derive(Parser)]
#[command(
    name = "kts",
    version,
    about = "Recursive Kummer tower certification and search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the hypotheses for one (alpha, f) and compute its closure.
    Check(CheckArgs),
    /// Compute the closure of y^m = b1(x)/b2(x) or of a Kummer form.
    Closure(ClosureArgs),
    /// Search every (alpha, f) of a given degree and group towers by scaling.
    Search(SearchArgs),
    /// Look for c with (beta, g) = (c^-m alpha, f(cT)).
    Equiv(EquivArgs),
    /// Run a built-in reproduction case.
    Reproduce(ReproduceArgs),
}

#[derive(Args, Serialize)]
struct FieldArgs {
    #[arg(long)]
    p: u32,
    /// Extension degree; inferred from --modulus when omitted.
    #[arg(long)]
    s: Option<usize>,
    /// Monic modulus coefficients, constant term first, e.g. `2,2,1`.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
}

impl FieldArgs {
    fn build(&self) -> anyhow::Result<FieldCtx> {
        match (&self.modulus, self.s) {
            (Some(m), s) => {
                let deg = m.len().saturating_sub(1);
                if s.is_some_and(|s| s != deg) {
                    bail!(
                        "--s {} disagrees with a modulus of degree {deg}",
                        s.unwrap_or(0)
                    );
                }
                Ok(FieldCtx::extension(self.p, deg, Some(m))?)
            }
            (None, None | Some(1)) => Ok(FieldCtx::prime(self.p)?),
            (None, Some(s)) => cache::cached_field(self.p, s),
        }
    }
}

#[derive(Args, Serialize)]
struct LimitArgs {
    /// Largest closure size before giving up.
    #[arg(long, default_value_t = ClosureLimits::default().max_size)]
    max_s0: usize,
    /// Largest degree over GF(p) of a field the closure may enter.
    #[arg(long, default_value_t = ClosureLimits::default().max_ambient_degree)]
    max_ambient_degree: usize,
}

impl LimitArgs {
    fn limits(&self) -> ClosureLimits {
        ClosureLimits {
            max_size: self.max_s0,
            max_ambient_degree: self.max_ambient_degree,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Serialize)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the result, with its run manifest, to this JSON file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct CheckArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 2)]
    m: u32,
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    f: String,
    #[command(flatten)]
    limits: LimitArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Serialize)]
struct ClosureArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 2)]
    m: u32,
    #[arg(long, requires = "f", conflicts_with_all = ["b1", "b2"])]
    alpha: Option<String>,
    #[arg(long, requires = "alpha")]
    f: Option<String>,
    #[arg(long, requires = "b2")]
    b1: Option<String>,
    #[arg(long, requires = "b1")]
    b2: Option<String>,
    #[command(flatten)]
    limits: LimitArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Serialize)]
struct SearchArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 2)]
    m: u32,
    #[arg(long, default_value_t = 1)]
    deg_f: usize,
    /// Restrict alpha to these values (repeatable).
    #[arg(long)]
    alpha: Vec<String>,
    /// Certify every candidate instead of one per scaling orbit.
    #[arg(long)]
    no_dedup: bool,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    limits: LimitArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Serialize)]
struct EquivArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 2)]
    m: u32,
    /// alpha of the first and second spec.
    #[arg(long, num_args = 1, required = true)]
    alpha: Vec<String>,
    /// f of the first and second spec.
    #[arg(long, num_args = 1, required = true)]
    f: Vec<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Serialize)]
struct ReproduceArgs {
    name: String,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Writes to stdout; a closed pipe ends the program quietly.
fn say(text: &str) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        r => Ok(r?),
    }
}

fn kummer(field: &FieldCtx, m: u32, alpha: &str, f: &str) -> anyhow::Result<KummerSpec> {
    let alpha = parse_element(field, alpha).with_context(|| format!("alpha `{alpha}`"))?;
    let f = parse_poly(field, f).with_context(|| format!("f `{f}`"))?;
    Ok(KummerSpec::new(field, m, alpha, f)?)
}

fn jobs(n: Option<usize>) -> usize {
    n.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1)
}

/// Prints `result` in the requested format and writes it to `--out`.
fn emit(
    command: &str,
    config: &impl Serialize,
    field: &FieldCtx,
    started: Instant,
    output: &OutputArgs,
    result: serde_json::Value,
    text: String,
) -> anyhow::Result<()> {
    match output.format {
        Format::Json => say(&(serde_json::to_string_pretty(&result)? + "\n"))?,
        Format::Text => say(&text)?,
        Format::Csv => bail!("csv output is only available for `search`"),
    }
    if let Some(path) = &output.out {
        let manifest = RunManifest::new(
            command,
            serde_json::to_value(config)?,
            field.descriptor(),
            started.elapsed(),
            &result,
        );
        write_json(path, &manifest, &result)?;
    }
    Ok(())
}

fn check(args: &CheckArgs) -> anyhow::Result<u8> {
    let started = Instant::now();
    let field = args.field.build()?;
    let spec = kummer(&field, args.m, &args.alpha, &args.f)?;
    let report = certify(&spec, args.limits.limits());
    let text = render::report(&report);
    emit(
        "check",
        args,
        &field,
        started,
        &args.output,
        serde_json::to_value(&report)?,
        text,
    )?;
    Ok(if report.certified { 0 } else { 2 })
}

fn closure(args: &ClosureArgs) -> anyhow::Result<u8> {
    let started = Instant::now();
    let field = args.field.build()?;
    let rec = match (&args.alpha, &args.f, &args.b1, &args.b2) {
        (Some(a), Some(f), None, None) => kummer(&field, args.m, a, f)?.to_recursion()?,
        (None, None, Some(b1), Some(b2)) => {
            let b1 = parse_poly(&field, b1).with_context(|| format!("b1 `{b1}`"))?;
            let b2 = parse_poly(&field, b2).with_context(|| format!("b2 `{b2}`"))?;
            RecursionSpec::new(&field, args.m, b1, b2)?
        }
        _ => bail!("give either --alpha and --f, or --b1 and --b2"),
    };
    let rec = RecursionSpec::strict(&field, rec.m(), rec.b1().clone(), rec.b2().clone())?;
    let result = compute_closure(&rec, args.limits.limits())?;
    let text = render::closure(&result);
    emit(
        "closure",
        args,
        &field,
        started,
        &args.output,
        serde_json::to_value(&result)?,
        text,
    )?;
    Ok(if result.is_closed() { 0 } else { 3 })
}

fn search(args: &SearchArgs) -> anyhow::Result<u8> {
    let started = Instant::now();
    let field = args.field.build()?;
    let mut cfg = SearchConfig::new(&field, args.m, args.deg_f);
    if !args.alpha.is_empty() {
        let alphas = args
            .alpha
            .iter()
            .map(|a| parse_element(&field, a).with_context(|| format!("alpha `{a}`")))
            .collect::<anyhow::Result<Vec<_>>>()?;
        cfg.alpha_filter = Some(alphas);
    }
    cfg.limits = args.limits.limits();
    cfg.dedup = !args.no_dedup;
    cfg.parallelism = jobs(args.jobs);
    let outcome = run_search(&cfg)?;
    let result = serde_json::to_value(&outcome)?;
    let rows = outcome.rows();
    match args.output.format {
        Format::Json => say(&(serde_json::to_string_pretty(&result)? + "\n"))?,
        Format::Text => say(&render::search(&outcome))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                w.serialize(row)?;
            }
            say(&String::from_utf8(w.into_inner()?)?)?;
        }
    }
    if let Some(path) = &args.output.out {
        let manifest = RunManifest::new(
            "search",
            serde_json::to_value(args)?,
            field.descriptor(),
            started.elapsed(),
            &result,
        );
        write_json(path, &manifest, &result)?;
        write_csv(&path.with_extension("csv"), &manifest, &rows)?;
    }
    Ok(0)
}

fn equiv(args: &EquivArgs) -> anyhow::Result<u8> {
    let started = Instant::now();
    if args.alpha.len() != 2 || args.f.len() != 2 {
        bail!("give --alpha and --f exactly twice, once per spec");
    }
    let field = args.field.build()?;
    let a = kummer(&field, args.m, &args.alpha[0], &args.f[0])?;
    let b = kummer(&field, args.m, &args.alpha[1], &args.f[1])?;
    let witness = verify_equivalence(&a, &b)?;
    let (result, text) = match &witness {
        Some(c) => {
            let image = transform(&a, c)?;
            let text = format!(
                "related by c = {c}\n  beta = c^-{m} * alpha = {}\n  g(T) = f(c*T) = {}\n",
                image.alpha(),
                image.f(),
                m = args.m
            );
            let json = serde_json::json!({
                "related": true,
                "witness": c.to_string(),
                "beta": image.alpha().to_string(),
                "g": image.f().to_string(),
            });
            (json, text)
        }
        None => (
            serde_json::json!({ "related": false }),
            "not related by scaling\n".to_string(),
        ),
    };
    emit("equiv", args, &field, started, &args.output, result, text)?;
    Ok(if witness.is_some() { 0 } else { 2 })
}

fn reproduce(args: &ReproduceArgs) -> anyhow::Result<u8> {
    if !FIXTURES.iter().any(|(n, _)| *n == args.name) {
        let names: Vec<_> = FIXTURES
            .iter()
            .map(|(n, d)| format!("  {n:<9} {d}"))
            .collect();
        bail!(
            "unknown fixture `{}`; available:\n{}",
            args.name,
            names.join("\n")
        );
    }
    let report = run_fixture(&args.name, jobs(args.jobs))?;
    match args.format {
        Format::Text => say(&format!("{report}\n"))?,
        Format::Json => {
            let checks: Vec<_> = report
                .checks
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "label": c.label, "expected": c.expected,
                        "actual": c.actual, "passed": c.passed(),
                    })
                })
                .collect();
            let v = serde_json::json!({ "name": report.name, "passed": report.passed(), "checks": checks });
            say(&(serde_json::to_string_pretty(&v)? + "\n"))?;
        }
        Format::Csv => bail!("csv output is only available for `search`"),
    }
    Ok(if report.passed() { 0 } else { 2 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check(a) => check(a),
        Command::Closure(a) => closure(a),
        Command::Search(a) => search(a),
        Command::Equiv(a) => equiv(a),
        Command::Reproduce(a) => reproduce(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
