//! Plain-text views. Every number shown here is also in the JSON output.

use std::fmt::Write;

use kts_core::search::SearchOutcome;
use kts_core::{ClosureResult, ClosureStatus, TowerReport};

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn status(s: ClosureStatus) -> &'static str {
    match s {
        ClosureStatus::Closed => "closed",
        ClosureStatus::ExceededSize => "exceeded size",
        ClosureStatus::ExceededDegree => "exceeded degree",
    }
}

pub fn closure(c: &ClosureResult) -> String {
    let elems: Vec<_> = c.elements.iter().map(|e| e.to_string()).collect();
    let seeds: Vec<_> = c.seeds.iter().map(|e| e.to_string()).collect();
    let mut out = String::new();
    let _ = writeln!(out, "status       {}", status(c.status));
    let _ = writeln!(out, "size         {}", c.size());
    let _ = writeln!(out, "ambient      {} (degree {})", c.ambient, c.ambient.s());
    if c.ambient != *c.embedding.source() {
        let _ = writeln!(out, "base d maps  {}", c.embedding.image());
    }
    let _ = writeln!(out, "generations  {}", c.generations);
    let _ = writeln!(out, "seeds        {{{}}}", seeds.join(", "));
    let _ = writeln!(out, "elements     {{{}}}", elems.join(", "));
    out
}

pub fn report(r: &TowerReport) -> String {
    let s = &r.spec;
    let mut out = String::new();
    let _ = writeln!(out, "field        {}", s.field());
    let _ = writeln!(
        out,
        "equation     y^{m} = (x^{m} - alpha*f(x) + alpha) / f(x), m = {m}",
        m = s.m()
    );
    let _ = writeln!(out, "alpha        {}", s.alpha());
    let _ = writeln!(out, "f            {}", s.f());
    let c = &r.checks;
    for (name, ok) in [
        ("shape", c.shape),
        ("q_mod_m", c.q_mod_m),
        ("gcd_m_q", c.gcd_m_q),
        ("gcd_condition", c.gcd_condition),
        ("splits", c.splits),
        ("disjoint_zero_sets", c.disjoint_zero_sets),
        ("separable_f", c.separable_f),
        ("coprime_b1_b2", c.coprime_b1_b2),
    ] {
        let _ = writeln!(out, "  {name:<20} {}", if ok { "ok" } else { "FAILED" });
    }
    match &r.closure {
        Some(cl) => {
            for line in closure(cl).lines() {
                let _ = writeln!(out, "closure {line}");
            }
        }
        None => out.push_str("closure      not computed\n"),
    }
    if let Some(b) = r.split_bound {
        let _ = writeln!(out, "split bound  {b}");
    }
    if let Some(l) = r.lambda_bound {
        let _ = writeln!(out, "lambda bound {l}");
    }
    if let Some(o) = r.optimality {
        let _ = writeln!(
            out,
            "ihara bound  {} (attained: {})",
            o.ihara,
            yes(o.attained)
        );
    }
    let _ = writeln!(out, "certified    {}", yes(r.certified));
    let _ = writeln!(out, "key          {}", r.canonical_key);
    out
}

pub fn search(o: &SearchOutcome) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "candidates   {}", o.total_candidates);
    let _ = writeln!(out, "passing      {}", o.passing_equations);
    let _ = writeln!(out, "classes      {}", o.classes.len());
    let _ = writeln!(out, "over budget  {}", o.exceeded_budget);
    for (name, n) in &o.rejected_by {
        let _ = writeln!(out, "rejected     {n} ({name})");
    }
    if !o.rows().is_empty() {
        let _ = writeln!(
            out,
            "\n{:>4} {:>8} {:>5} {:>6}  {:<16} f",
            "#", "lambda", "|S0|", "orbit", "alpha"
        );
    }
    for (i, row) in o.rows().iter().enumerate() {
        let lambda = if row.lambda_den == 1 {
            row.lambda_num.to_string()
        } else {
            format!("{}/{}", row.lambda_num, row.lambda_den)
        };
        let _ = writeln!(
            out,
            "{:>4} {:>8} {:>5} {:>6}  {:<16} {}",
            i + 1,
            lambda,
            row.s0_size,
            row.orbit_size,
            row.alpha,
            row.f
        );
    }
    out
}
