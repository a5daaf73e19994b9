//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use kts_core::fixtures::{
    gf25, gf25_flipped_recursion, gf25_recursion, gf25_tower, gf81, gf81_new_towers, gf9,
    lift_to_gf81, optimal_gf9, rescaled_rows, second_gf9, GF25_S0, GF81_ALPHA,
};
use kts_core::gf::{default_field, embedding_between, EmbeddingMap, FieldCtx, FieldElement};
use kts_core::notation::parse_element;
use kts_core::poly::{all_roots, DegreeBudget, Poly};
use kts_core::search::{classify_new, run_search, SearchConfig};
use kts_core::tower::{
    canonical_key, certify, closure_is_minimal, closure_transform_check, compute_closure,
    is_closed_set, lambda_bound, places_lower_bound, transform, verify_closure, verify_equivalence,
    ClosureLimits, ClosureResult, KummerSpec, RecursionSpec,
};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Closed results gathered from criteria 1-6 for the post-verification pass.
type Closed = Vec<(RecursionSpec, ClosureResult)>;

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn expect<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, expected: T, actual: T) {
        if expected != actual {
            self.failures
                .push(format!("{what}: expected {expected:?}, got {actual:?}"));
        }
    }

    fn ensure(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }
}

fn elements(ctx: &FieldCtx, texts: &[&str]) -> BTreeSet<FieldElement> {
    texts
        .iter()
        .map(|t| parse_element(ctx, t).unwrap())
        .collect()
}

fn base_set(c: &ClosureResult, texts: &[&str]) -> BTreeSet<FieldElement> {
    let base = c.embedding.source().clone();
    elements(&base, texts)
        .iter()
        .map(|x| c.embedding.apply(x).unwrap())
        .collect()
}

fn certified_example(
    out: &mut Outcome,
    closed: &mut Closed,
    spec: &KummerSpec,
    listed: &[&str],
    lambda: Ratio<u64>,
) {
    let report = certify(spec, ClosureLimits::default());
    out.ensure("certified", report.certified);
    out.expect("|S0|", Some(listed.len()), report.s0_size());
    out.expect("split bound", Some(2), report.split_bound);
    out.expect("lambda bound", Some(lambda), report.lambda_bound);
    if let Some(c) = &report.closure {
        let got: BTreeSet<_> = c.elements.iter().cloned().collect();
        out.expect("S0", base_set(c, listed), got);
        closed.push((spec.to_recursion().unwrap(), c.clone()));
    }
}

fn criterion1(out: &mut Outcome, closed: &mut Closed) {
    certified_example(
        out,
        closed,
        &optimal_gf9(),
        &["0", "1", "2"],
        Ratio::from_integer(2),
    );
}

fn criterion2(out: &mut Outcome, closed: &mut Closed) {
    let listed = ["0", "1", "2", "d", "d^3", "d^5", "d^7"];
    certified_example(out, closed, &second_gf9(), &listed, Ratio::new(2, 3));
}

fn criterion3(out: &mut Outcome, closed: &mut Closed) {
    let rec = gf25_recursion();
    let c = compute_closure(&rec, ClosureLimits::default()).unwrap();
    out.ensure("recursion closes", c.is_closed());
    out.expect("recursion |S0|", 5, c.size());
    let got: BTreeSet<_> = c.elements.iter().cloned().collect();
    out.expect("recursion S0", base_set(&c, &GF25_S0), got);
    out.expect(
        "lambda from recursion",
        Ratio::from_integer(1),
        lambda_bound(2, c.size()).unwrap(),
    );
    out.expect("Kummer form", vec![gf25_tower()], rec.kummer_forms());
    closed.push((rec, c));
    certified_example(out, closed, &gf25_tower(), &GF25_S0, Ratio::from_integer(1));

    let f25 = gf25();
    let literal = gf25_flipped_recursion();
    let listed: Vec<_> = elements(&f25, &GF25_S0).into_iter().collect();
    let literal_closed = is_closed_set(&literal, &EmbeddingMap::identity(&f25), &listed).unwrap();
    let escape = compute_closure(&literal, ClosureLimits::default()).unwrap();
    out.notes.push(format!(
        "b1 = T^2 + (d+2)T (alpha = 4); with b1 = T^2 - (d+2)T the listed set is {} and the closure stops {:?} at {} elements in GF(5^{})",
        if literal_closed { "closed" } else { "not closed" },
        escape.status,
        escape.size(),
        escape.ambient.s()
    ));
}

fn criterion4(out: &mut Outcome, parallelism: usize) {
    let f81 = gf81();
    let mut cfg = SearchConfig::new(&f81, 2, 1);
    cfg.alpha_filter = Some(vec![parse_element(&f81, GF81_ALPHA).unwrap()]);
    cfg.parallelism = parallelism;
    let result = run_search(&cfg).unwrap();
    out.expect("candidates", 6480, result.total_candidates);
    out.expect("passing f", 8, result.passing_equations);
    out.expect("classes", 4, result.classes.len());
    let known = [
        lift_to_gf81(&optimal_gf9()).unwrap(),
        lift_to_gf81(&second_gf9()).unwrap(),
    ];
    let known: Vec<_> = known.iter().map(canonical_key).collect();
    let (old, new) = classify_new(&result, &known);
    out.expect("classes of the GF(9) towers", 2, old.len());
    out.expect("new classes", 2, new.len());
    for class in &new {
        out.expect("new |S0|", Some(9), class.representative.s0_size());
        out.expect(
            "new lambda",
            Some(Ratio::new(1, 2)),
            class.representative.lambda_bound,
        );
    }
    let found: BTreeSet<_> = new.iter().map(|c| c.key.clone()).collect();
    let listed: BTreeSet<_> = gf81_new_towers().iter().map(canonical_key).collect();
    out.expect("new classes are I and J", listed, found);
}

fn criterion5(out: &mut Outcome) {
    let base = optimal_gf9();
    for (i, row) in rescaled_rows().iter().enumerate() {
        match verify_equivalence(&base, row).unwrap() {
            Some(c) => {
                out.ensure(
                    &format!("row {} is the image under c", i + 1),
                    transform(&base, &c).unwrap() == *row,
                );
                let ok = closure_transform_check(&base, &c, ClosureLimits::default()).unwrap();
                out.ensure(&format!("row {}: S0 scales by 1/c", i + 1), ok);
            }
            None => out.ensure(&format!("row {}: no witness", i + 1), false),
        }
    }
}

fn criterion6(out: &mut Outcome, closed: &mut Closed, parallelism: usize) {
    for (field, classes, equations) in [(gf9(), 2, None), (gf25(), 1, Some(24))] {
        let mut cfg = SearchConfig::new(&field, 2, 1);
        cfg.parallelism = parallelism;
        let result = run_search(&cfg).unwrap();
        let q = field.order();
        out.expect(&format!("q={q} classes"), classes, result.classes.len());
        if let Some(n) = equations {
            out.expect(
                &format!("q={q} passing equations"),
                n,
                result.passing_equations,
            );
            out.expect(
                "q=25 class",
                vec![canonical_key(&gf25_tower())],
                result.keys(),
            );
        }
        for class in &result.classes {
            let r = &class.representative;
            closed.push((r.spec.to_recursion().unwrap(), r.closure.clone().unwrap()));
        }
    }
}

fn small_fields() -> Vec<FieldCtx> {
    let mut out = Vec::new();
    for p in (2u32..=81).filter(|&n| (2..n).all(|k| n % k != 0)) {
        let mut s = 1;
        while (p as u128).pow(s as u32) <= 81 {
            out.push(default_field(p, s).unwrap());
            s += 1;
        }
    }
    out
}

fn field_axioms(out: &mut Outcome) {
    for ctx in small_fields() {
        let xs: Vec<_> = ctx.elements().collect();
        let name = format!("GF({}^{})", ctx.p(), ctx.s());
        let mut ok = true;
        for a in &xs {
            let fa = ctx.frobenius(a).unwrap();
            let mut orbit = a.clone();
            for _ in 0..ctx.s() {
                orbit = ctx.frobenius(&orbit).unwrap();
            }
            ok &= orbit == *a;
            ok &= ctx.add(a, &ctx.neg(a).unwrap()).unwrap().is_zero();
            ok &= a.is_zero() || ctx.mul(a, &ctx.inv(a).unwrap()).unwrap().is_one();
            for b in &xs {
                let fb = ctx.frobenius(b).unwrap();
                let ab = ctx.mul(a, b).unwrap();
                ok &= ab == ctx.mul(b, a).unwrap();
                ok &= ctx.add(a, b).unwrap() == ctx.add(b, a).unwrap();
                ok &= ctx.frobenius(&ab).unwrap() == ctx.mul(&fa, &fb).unwrap();
                ok &= ctx.frobenius(&ctx.add(a, b).unwrap()).unwrap() == ctx.add(&fa, &fb).unwrap();
                // distributivity and associativity against a fixed third element
                let c = &xs[(xs.len() / 2 + 1) % xs.len()];
                ok &= ctx.mul(&ab, c).unwrap() == ctx.mul(a, &ctx.mul(b, c).unwrap()).unwrap();
                ok &= ctx.mul(c, &ctx.add(a, b).unwrap()).unwrap()
                    == ctx
                        .add(&ctx.mul(c, a).unwrap(), &ctx.mul(c, b).unwrap())
                        .unwrap();
            }
        }
        out.ensure(&format!("field axioms and Frobenius on {name}"), ok);
    }
}

fn root_finder(out: &mut Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    for i in 0..500 {
        let ctx = if i % 2 == 0 { gf9() } else { gf25() };
        let deg = rng.gen_range(1..=4);
        let mut coeffs: Vec<_> = (0..deg)
            .map(|_| ctx.element_at(rng.gen_range(0..ctx.order())).unwrap())
            .collect();
        coeffs.push(ctx.element_at(rng.gen_range(1..ctx.order())).unwrap());
        let g = Poly::new(&ctx, coeffs).unwrap();
        let found = all_roots(&g, DegreeBudget::default()).unwrap();
        let map = embedding_between(&ctx, &found.ambient).unwrap();
        let by_eval: BTreeSet<_> = ctx
            .elements()
            .filter(|x| g.eval(x).unwrap().is_zero())
            .map(|x| map.apply(&x).unwrap())
            .collect();
        let images: BTreeSet<_> = ctx.elements().map(|x| map.apply(&x).unwrap()).collect();
        let in_base: BTreeSet<_> = found
            .distinct()
            .filter(|r| images.contains(r))
            .cloned()
            .collect();
        let lifted = g.lift(&map).unwrap();
        let ok = in_base == by_eval
            && found.multiplicity_sum() as usize == deg
            && found.distinct().all(|r| lifted.eval(r).unwrap().is_zero());
        out.ensure(&format!("roots of {g}"), ok);
    }
}

fn orbit_invariance(out: &mut Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let towers = [optimal_gf9(), second_gf9(), gf25_tower()];
    for i in 0..100 {
        let ctx = if i % 2 == 0 { gf9() } else { gf25() };
        let nonzero = |rng: &mut ChaCha8Rng| ctx.element_at(rng.gen_range(1..ctx.order())).unwrap();
        let spec = if i % 5 == 0 {
            towers[i % 3].clone()
        } else {
            let f = Poly::new(
                &ctx,
                vec![
                    ctx.element_at(rng.gen_range(0..ctx.order())).unwrap(),
                    nonzero(&mut rng),
                ],
            )
            .unwrap();
            KummerSpec::new(&ctx, 2, nonzero(&mut rng), f).unwrap()
        };
        let c = spec.field().element_at(rng.gen_range(1..spec.q())).unwrap();
        let moved = transform(&spec, &c).unwrap();
        let (a, b) = (
            certify(&spec, ClosureLimits::default()),
            certify(&moved, ClosureLimits::default()),
        );
        let same = (a.certified, a.s0_size(), a.lambda_bound)
            == (b.certified, b.s0_size(), b.lambda_bound);
        out.ensure(&format!("orbit invariance for {spec:?} under {c}"), same);
    }
}

fn determinism(out: &mut Outcome, parallelism: usize) {
    for field in [gf9(), gf25()] {
        let mut cfg = SearchConfig::new(&field, 2, 1);
        cfg.parallelism = 1;
        let one = serde_json::to_string(&run_search(&cfg).unwrap()).unwrap();
        cfg.parallelism = parallelism.max(2);
        let many = serde_json::to_string(&run_search(&cfg).unwrap()).unwrap();
        out.ensure(
            &format!("q={} search identical across worker counts", field.order()),
            one == many,
        );
    }
}

fn criterion7(out: &mut Outcome, closed: &Closed, parallelism: usize) {
    field_axioms(out);
    root_finder(out);
    for (rec, c) in closed {
        out.ensure(
            "closed result verifies",
            c.is_closed() && verify_closure(rec, c).unwrap(),
        );
        out.ensure(
            "closed result is minimal",
            closure_is_minimal(rec, c).unwrap(),
        );
    }
    out.notes
        .push(format!("{} closed results verified", closed.len()));
    orbit_invariance(out);
    determinism(out, parallelism);
}

fn criterion8(out: &mut Outcome) {
    for i in 0..=10u32 {
        out.expect(
            &format!("places at level {i}"),
            (1u128 << (i + 1)) + 1,
            places_lower_bound(2, 1, 1 << i),
        );
    }
    let expected = [
        (3, Ratio::from_integer(2)),
        (7, Ratio::new(2, 3)),
        (5, Ratio::from_integer(1)),
        (9, Ratio::new(1, 2)),
    ];
    for (size, lambda) in expected {
        out.expect(
            &format!("lambda(2, {size})"),
            lambda,
            lambda_bound(2, size).unwrap(),
        );
    }
}

fn main() {
    let parallelism = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut closed = Closed::new();
    let mut failed = 0;
    let mut run =
        |id: u32, title: &str, limit: Option<Duration>, body: &mut dyn FnMut(&mut Outcome)| {
            let mut out = Outcome::new();
            let start = Instant::now();
            body(&mut out);
            let took = start.elapsed();
            if let Some(limit) = limit {
                if took > limit {
                    out.failures
                        .push(format!("took {took:.2?}, limit {limit:?}"));
                }
            }
            let verdict = if out.failures.is_empty() {
                "PASS"
            } else {
                "FAIL"
            };
            println!("criterion {id} [{verdict}] {title} ({took:.2?})");
            for note in &out.notes {
                println!("    note: {note}");
            }
            for f in out.failures.iter().take(10) {
                println!("    {f}");
            }
            failed += !out.failures.is_empty() as u32;
        };
    let secs = |s| Some(Duration::from_secs(s));
    run(1, "GF(9), alpha = 1, f = T", secs(1), &mut |o| {
        criterion1(o, &mut closed)
    });
    run(2, "GF(9), alpha = 1, f = T + 1", secs(1), &mut |o| {
        criterion2(o, &mut closed)
    });
    run(
        3,
        "GF(25), y^2 = (x^2 + (d+2)x) / ((d+2)x + 1)",
        secs(1),
        &mut |o| criterion3(o, &mut closed),
    );
    run(4, "GF(81) search with fixed alpha", secs(60), &mut |o| {
        criterion4(o, parallelism)
    });
    run(
        5,
        "rescaled equations of the GF(9) tower",
        secs(1),
        &mut criterion5,
    );
    run(
        6,
        "full searches over GF(9) and GF(25)",
        secs(30),
        &mut |o| criterion6(o, &mut closed, parallelism),
    );
    let closed = std::mem::take(&mut closed);
    run(7, "property suites", None, &mut |o| {
        criterion7(o, &closed, parallelism)
    });
    run(8, "bound formulas", None, &mut criterion8);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
