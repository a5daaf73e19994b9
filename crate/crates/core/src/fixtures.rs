//! Built-in reproduction cases with their reference values.
//!
//! Only the reference numbers are stored here (set sizes, bounds, listed
//! elements, class counts). Everything else is recomputed on each run.

use std::fmt;

use num_rational::Ratio;

use crate::gf::{embedding_between, EmbeddingMap, FieldCtx, FieldElement};
use crate::notation::{parse_element, parse_poly};
use crate::search::{classify_new, run_search, SearchConfig, SearchOutcome};
use crate::tower::{
    canonical_key, certify, closure_transform_check, compute_closure, is_closed_set,
    verify_equivalence, ClosureLimits, ClosureResult, KummerSpec, RecursionSpec, TowerError,
};

pub const FIXTURES: &[(&str, &str)] = &[
    ("ex1", "GF(9), alpha = 1, f = T: optimal tower"),
    ("ex2", "GF(9), alpha = 1, f = T + 1"),
    ("ex25", "GF(25), alpha = 4, f = (d+2)T + 1"),
    (
        "ex81",
        "GF(81), alpha = 2d^3+2d^2+1: deg-1 search and the two new towers",
    ),
    (
        "table1",
        "six rescaled equations for the GF(9) optimal tower",
    ),
    ("search9", "full GF(9) search, m = 2, deg f = 1"),
    ("search25", "full GF(25) search, m = 2, deg f = 1"),
];

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("unknown fixture `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Tower(#[from] TowerError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureCheck {
    pub label: String,
    pub expected: String,
    pub actual: String,
}

impl FixtureCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureReport {
    pub name: String,
    pub checks: Vec<FixtureCheck>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(FixtureCheck::passed)
    }
}

impl fmt::Display for FixtureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed() { "ok  " } else { "FAIL" };
            writeln!(
                f,
                "{mark} {}: expected {}, got {}",
                c.label, c.expected, c.actual
            )?;
        }
        let ok = self.checks.iter().filter(|c| c.passed()).count();
        write!(
            f,
            "{}: {}/{} checks passed",
            self.name,
            ok,
            self.checks.len()
        )
    }
}

struct Recorder(Vec<FixtureCheck>);

impl Recorder {
    fn check(&mut self, label: &str, expected: impl ToString, actual: impl ToString) {
        self.0.push(FixtureCheck {
            label: label.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }
}

/// GF(9) with `d^2 + 2d + 2 = 0`.
pub fn gf9() -> FieldCtx {
    FieldCtx::extension(3, 2, Some(&[2, 2, 1])).expect("irreducible")
}

/// GF(25) with `d^2 + 4d + 2 = 0`.
pub fn gf25() -> FieldCtx {
    FieldCtx::extension(5, 2, Some(&[2, 4, 1])).expect("irreducible")
}

/// GF(81) with `d^4 + 2d^3 + 2 = 0`.
pub fn gf81() -> FieldCtx {
    FieldCtx::extension(3, 4, Some(&[2, 0, 0, 2, 1])).expect("irreducible")
}

/// Builds `(m = 2, α, f)` from text. Panics on malformed literals, which are
/// all compile-time constants here.
pub fn spec(field: &FieldCtx, alpha: &str, f: &str) -> KummerSpec {
    KummerSpec::new(
        field,
        2,
        parse_element(field, alpha).expect("fixture literal"),
        parse_poly(field, f).expect("fixture literal"),
    )
    .expect("fixture spec")
}

pub fn optimal_gf9() -> KummerSpec {
    spec(&gf9(), "1", "T")
}

pub fn second_gf9() -> KummerSpec {
    spec(&gf9(), "1", "T + 1")
}

/// The GF(25) tower `y^2 = (x^2 + (d+2)x) / ((d+2)x + 1)`, the recursion of
/// `α = 4, f = (d+2)T + 1`.
pub fn gf25_recursion() -> RecursionSpec {
    recursion25("T^2 + (d+2)*T")
}

/// Same denominator with `b1 = x^2 - (d+2)x`. Its closure leaves GF(25): at
/// `γ = d+2` the fibre is `{4d, 4d+1}`.
pub fn gf25_flipped_recursion() -> RecursionSpec {
    recursion25("T^2 - (d+2)*T")
}

fn recursion25(b1: &str) -> RecursionSpec {
    let f25 = gf25();
    RecursionSpec::new(
        &f25,
        2,
        parse_poly(&f25, b1).expect("fixture literal"),
        parse_poly(&f25, "(d+2)*T + 1").expect("fixture literal"),
    )
    .expect("fixture recursion")
}

pub fn gf25_tower() -> KummerSpec {
    spec(&gf25(), "4", "(d+2)*T + 1")
}

pub const GF25_S0: [&str; 5] = ["0", "2*d+4", "4*d+3", "d+2", "3*d+1"];

pub const GF81_ALPHA: &str = "2*d^3 + 2*d^2 + 1";

/// The two towers over GF(81) that are not lifts of the GF(9) examples.
pub fn gf81_new_towers() -> [KummerSpec; 2] {
    let f81 = gf81();
    [
        spec(&f81, GF81_ALPHA, "(2*d^3+2*d^2+2)*T + (d^3+d^2+2)"),
        spec(&f81, GF81_ALPHA, "(d^3+d^2)*T + (2*d^3+2*d^2)"),
    ]
}

/// `(α, f)` for each row of the table of rescaled equations.
pub const RESCALED: [(&str, &str); 6] = [
    ("d+1", "(d+2)*T"),
    ("d+1", "(2*d+1)*T"),
    ("2", "(d+1)*T"),
    ("2*d+2", "2*d*T"),
    ("1", "2*T"),
    ("2*d+2", "d*T"),
];

pub fn rescaled_rows() -> Vec<KummerSpec> {
    let f9 = gf9();
    RESCALED.iter().map(|(a, f)| spec(&f9, a, f)).collect()
}

/// Lifts a GF(9) spec into GF(81) through the default embedding.
pub fn lift_to_gf81(s: &KummerSpec) -> Result<KummerSpec, TowerError> {
    let map = embedding_between(s.field(), &gf81())?;
    s.lift(&map)
}

fn set_text(mut xs: Vec<FieldElement>) -> String {
    xs.sort();
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// `expected` written over the base field, pushed into the closure ambient.
fn expected_set(closure: &ClosureResult, expected: &[&str]) -> String {
    let base = closure.embedding.source();
    let xs = expected
        .iter()
        .map(|t| {
            let e = parse_element(base, t).expect("fixture literal");
            closure.embedding.apply(&e).expect("base element")
        })
        .collect();
    set_text(xs)
}

fn ratio_text(r: Option<Ratio<u64>>) -> String {
    r.map_or("none".into(), |r| r.to_string())
}

fn single(rec: &mut Recorder, s: &KummerSpec, s0: Option<&[&str]>, size: usize, lambda: &str) {
    let report = certify(s, ClosureLimits::default());
    rec.check("certified", true, report.certified);
    rec.check("|S0|", size, report.s0_size().unwrap_or(0));
    if let (Some(listed), Some(c)) = (s0, &report.closure) {
        rec.check("S0", expected_set(c, listed), set_text(c.elements.clone()));
    }
    rec.check("lambda bound", lambda, ratio_text(report.lambda_bound));
    rec.check("split bound", 2, report.split_bound.unwrap_or(0));
}

fn ex25(rec: &mut Recorder) -> Result<(), TowerError> {
    let r = gf25_recursion();
    rec.check("b1, b2 coprime", true, r.is_coprime());
    let closure = compute_closure(&r, ClosureLimits::default())?;
    rec.check("closure status", "Closed", format!("{:?}", closure.status));
    rec.check("|S0| (recursion)", 5, closure.size());
    rec.check(
        "S0 (recursion)",
        expected_set(&closure, &GF25_S0),
        set_text(closure.elements.clone()),
    );
    let forms = r.kummer_forms();
    rec.check("Kummer forms of the recursion", 1, forms.len());
    rec.check(
        "Kummer form is alpha = 4, f = (d+2)T + 1",
        true,
        forms == [gf25_tower()],
    );
    single(rec, &gf25_tower(), Some(&GF25_S0), 5, "1");
    let f25 = gf25();
    let split = crate::tower::check_splitting(&gf25_tower());
    rec.check("T^2 + 4 splits over GF(25)", true, split.splits);
    let listed: Vec<_> = GF25_S0
        .iter()
        .map(|t| parse_element(&f25, t).expect("fixture literal"))
        .collect();
    let literal = is_closed_set(
        &gf25_flipped_recursion(),
        &EmbeddingMap::identity(&f25),
        &listed,
    )?;
    rec.check("S0 closed under b1 = T^2 - (d+2)T", false, literal);
    Ok(())
}

fn ex81(rec: &mut Recorder, parallelism: usize) -> Result<(), TowerError> {
    let f81 = gf81();
    let new = gf81_new_towers();
    for (name, s) in ["I", "J"].iter().zip(&new) {
        let report = certify(s, ClosureLimits::default());
        rec.check(&format!("{name}: certified"), true, report.certified);
        rec.check(&format!("{name}: |S0|"), 9, report.s0_size().unwrap_or(0));
        rec.check(
            &format!("{name}: lambda bound"),
            "1/2",
            ratio_text(report.lambda_bound),
        );
    }
    let mut cfg = SearchConfig::new(&f81, 2, 1);
    cfg.alpha_filter = Some(vec![
        parse_element(&f81, GF81_ALPHA).expect("fixture literal")
    ]);
    cfg.parallelism = parallelism;
    let out = run_search(&cfg)?;
    rec.check("candidates", 80 * 81, out.total_candidates);
    rec.check("passing f", 8, out.passing_equations);
    rec.check("classes", 4, out.classes.len());
    let known = [lift_to_gf81(&optimal_gf9())?, lift_to_gf81(&second_gf9())?]
        .iter()
        .map(canonical_key)
        .collect::<Vec<_>>();
    let (old, fresh) = classify_new(&out, &known);
    rec.check("classes matching the GF(9) examples", 2, old.len());
    rec.check("new classes", 2, fresh.len());
    let mut fresh_keys: Vec<_> = fresh.iter().map(|c| c.key.clone()).collect();
    let mut listed_keys: Vec<_> = new.iter().map(canonical_key).collect();
    fresh_keys.sort();
    listed_keys.sort();
    rec.check("new classes are I and J", true, fresh_keys == listed_keys);
    Ok(())
}

fn rescaled(rec: &mut Recorder) -> Result<(), TowerError> {
    let base = optimal_gf9();
    for (i, row) in rescaled_rows().iter().enumerate() {
        let witness = verify_equivalence(&base, row)?;
        let scaled = match &witness {
            Some(c) => closure_transform_check(&base, c, ClosureLimits::default())?,
            None => false,
        };
        rec.check(
            &format!("row {}: scaling witness and S0 relation", i + 1),
            true,
            witness.is_some() && scaled,
        );
    }
    Ok(())
}

fn search(
    rec: &mut Recorder,
    field: &FieldCtx,
    classes: usize,
    equations: Option<u64>,
    parallelism: usize,
) -> Result<SearchOutcome, TowerError> {
    let mut cfg = SearchConfig::new(field, 2, 1);
    cfg.parallelism = parallelism;
    let out = run_search(&cfg)?;
    rec.check("certified classes", classes, out.classes.len());
    if let Some(n) = equations {
        rec.check("passing equations", n, out.passing_equations);
    }
    Ok(out)
}

/// Runs a named fixture. `parallelism` only affects the searches.
pub fn run_fixture(name: &str, parallelism: usize) -> Result<FixtureReport, FixtureError> {
    let mut rec = Recorder(Vec::new());
    match name {
        "ex1" => single(&mut rec, &optimal_gf9(), Some(&["0", "1", "2"]), 3, "2"),
        "ex2" => single(
            &mut rec,
            &second_gf9(),
            Some(&["0", "1", "2", "d", "d^3", "d^5", "d^7"]),
            7,
            "2/3",
        ),
        "ex25" => ex25(&mut rec)?,
        "ex81" => ex81(&mut rec, parallelism)?,
        "table1" => rescaled(&mut rec)?,
        "search9" => {
            search(&mut rec, &gf9(), 2, None, parallelism)?;
        }
        "search25" => {
            let out = search(&mut rec, &gf25(), 1, Some(24), parallelism)?;
            rec.check(
                "class contains alpha = 4, f = (d+2)T + 1",
                true,
                out.keys() == [canonical_key(&gf25_tower())],
            );
        }
        other => return Err(FixtureError::Unknown(other.into())),
    }
    Ok(FixtureReport {
        name: name.into(),
        checks: rec.0,
    })
}
