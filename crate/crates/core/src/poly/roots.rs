use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{Poly, PolyError};
use crate::gf::{default_field, embedding_between, EmbeddingMap, FieldCtx, FieldElement};

/// Fields up to this size are scanned element by element once the split part
/// of a polynomial is known.
const EXHAUSTIVE_SCAN_LIMIT: u128 = 1 << 16;

/// Upper bound on the degree over GF(p) of any field created to hold roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBudget {
    pub max_degree: usize,
}

impl Default for DegreeBudget {
    fn default() -> Self {
        DegreeBudget { max_degree: 16 }
    }
}

/// Every root of a polynomial with multiplicity, realized in `ambient`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSet {
    pub roots: Vec<(FieldElement, u32)>,
    pub ambient: FieldCtx,
}

impl RootSet {
    pub fn distinct(&self) -> impl Iterator<Item = &FieldElement> {
        self.roots.iter().map(|(r, _)| r)
    }

    pub fn multiplicity_sum(&self) -> u32 {
        self.roots.iter().map(|(_, k)| k).sum()
    }
}

/// Coefficient-wise inverse Frobenius of a polynomial whose derivative
/// vanishes, i.e. the unique `r` with `r^p = c`.
fn pth_root(c: &Poly) -> Poly {
    let ctx = c.ctx();
    let p = ctx.p() as usize;
    let inv_frob = ctx.order() / ctx.p() as u128;
    let coeffs = c
        .coeffs()
        .iter()
        .step_by(p)
        .map(|a| ctx.fpow(a, inv_frob))
        .collect();
    Poly::raw(ctx, coeffs)
}

/// `f = Π g_i^{k_i}` with each `g_i` monic, squarefree and pairwise coprime.
/// Sorted by multiplicity.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, u32)>, PolyError> {
    if f.is_constant() {
        return Err(PolyError::Constant);
    }
    let mut out = Vec::new();
    sff(&f.monic(), 1, &mut out);
    out.sort_by_key(|(g, k)| (*k, g.degree()));
    Ok(out)
}

fn sff(f: &Poly, scale: u32, out: &mut Vec<(Poly, u32)>) {
    let mut c = f.gcd_(&f.derivative());
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd_(&c);
        let fac = w.div_exact(&y);
        if !fac.is_constant() {
            out.push((fac, i * scale));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_constant() {
        let root = pth_root(&c);
        sff(&root, scale * f.ctx().p(), out);
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// `(product of all irreducible factors of degree k, k)`.
fn distinct_degree(h: &Poly) -> Vec<(Poly, usize)> {
    let ctx = h.ctx();
    if let Some(disc) = quadratic_discriminant(h) {
        let k = if ctx.fis_square(&disc) { 1 } else { 2 };
        return vec![(h.clone(), k)];
    }
    let q = ctx.order();
    let x = Poly::x(ctx);
    let mut rest = h.clone();
    let mut xq = x.clone();
    let mut out = Vec::new();
    let mut k = 0;
    while rest.degree().unwrap_or(0) >= 2 * (k + 1) {
        k += 1;
        xq = xq.powmod(q, &rest).expect("nonzero modulus");
        let g = rest.gcd_(&xq.sub_(&x));
        if !g.is_one() {
            rest = rest.div_exact(&g);
            xq = xq.divmod_(&rest).expect("nonzero modulus").1;
            out.push((g, k));
        }
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        out.push((rest, d));
    }
    out
}

/// Degrees of the irreducible factors of `g`, with multiplicity, ascending.
pub fn factor_degree_profile(g: &Poly) -> Result<Vec<usize>, PolyError> {
    let mut out = Vec::new();
    for (fac, mult) in squarefree_decomposition(g)? {
        for (part, k) in distinct_degree(&fac) {
            let count = part.degree().unwrap() / k;
            out.extend(std::iter::repeat_n(k, count * mult as usize));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// The distinct roots of `g` lying in `map.target()`, in canonical order.
pub fn distinct_roots_in(g: &Poly, map: &EmbeddingMap) -> Result<Vec<FieldElement>, PolyError> {
    if g.is_zero() {
        return Err(PolyError::Constant);
    }
    let lifted = g.lift(map)?.monic();
    if lifted.is_constant() {
        return Ok(Vec::new());
    }
    let ctx = map.target();
    let x = Poly::x(ctx);
    let xq = x.powmod(ctx.order(), &lifted)?;
    let split = lifted.gcd_(&xq.sub_(&x));
    let mut roots = Vec::new();
    extract_roots(&split, &mut roots);
    roots.sort();
    Ok(roots)
}

/// `b^2 - 4c` for a monic `T^2 + bT + c` in odd characteristic.
fn quadratic_discriminant(h: &Poly) -> Option<FieldElement> {
    let ctx = h.ctx();
    if h.degree() != Some(2) || ctx.p() == 2 || !h.coeff(2).is_one() {
        return None;
    }
    let b = h.coeff(1);
    let four_c = ctx.scalar_mul(4 % ctx.p(), &h.coeff(0));
    Some(ctx.fsub(&ctx.fmul(&b, &b), &four_c))
}

/// Roots of a monic squarefree polynomial that splits into linear factors.
fn extract_roots(h: &Poly, out: &mut Vec<FieldElement>) {
    let ctx = h.ctx();
    if let Some(disc) = quadratic_discriminant(h) {
        let root = ctx
            .fsqrt(&disc)
            .expect("split quadratic has a square discriminant");
        let half = ctx.finv(&ctx.constant(2)).expect("odd characteristic");
        let minus_b = ctx.fneg(&h.coeff(1));
        out.push(ctx.fmul(&ctx.fadd(&minus_b, &root), &half));
        out.push(ctx.fmul(&ctx.fsub(&minus_b, &root), &half));
        return;
    }
    match h.degree() {
        None | Some(0) => {}
        Some(1) => out.push(ctx.fneg(&h.coeff(0))),
        Some(_) if ctx.order() <= EXHAUSTIVE_SCAN_LIMIT => {
            let want = h.degree().unwrap();
            for e in ctx.elements() {
                if h.eval_(&e).is_zero() {
                    out.push(e);
                    if out.len() == want {
                        break;
                    }
                }
            }
        }
        Some(_) => equal_degree_split(h, out),
    }
}

fn equal_degree_split(h: &Poly, out: &mut Vec<FieldElement>) {
    let ctx = h.ctx();
    if h.degree().unwrap_or(0) <= 1 {
        extract_roots(h, out);
        return;
    }
    let x = Poly::x(ctx);
    for u in ctx.elements() {
        let shifted = x.add_(&Poly::raw(ctx, vec![u]));
        let probe = if ctx.p() == 2 {
            // Absolute trace of (T+u): sum of its 2^i powers, i < s.
            let mut term = shifted.divmod_(h).expect("nonzero").1;
            let mut acc = term.clone();
            for _ in 1..ctx.s() {
                term = term.mul_(&term).divmod_(h).expect("nonzero").1;
                acc = acc.add_(&term);
            }
            acc
        } else {
            let w = shifted.powmod((ctx.order() - 1) / 2, h).expect("nonzero");
            w.sub_(&Poly::one(ctx))
        };
        let g = h.gcd_(&probe);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < h.degree().unwrap() {
            let other = h.div_exact(&g);
            equal_degree_split(&g, out);
            equal_degree_split(&other, out);
            return;
        }
    }
    unreachable!("no splitting shift found for a fully split polynomial");
}

/// Every root of `g` in the smallest field that contains all of them.
///
/// The ambient field has degree `lcm(s * k)` over GF(p), where `s` is the
/// degree of the coefficient field and `k` ranges over irreducible factor
/// degrees. When that exceeds the coefficient field, a default-modulus field
/// is used and `g` is pushed through the canonical embedding.
pub fn all_roots(g: &Poly, budget: DegreeBudget) -> Result<RootSet, PolyError> {
    let ctx = g.ctx();
    let parts = squarefree_decomposition(g)?;
    let mut degree = ctx.s();
    let mut parts_by_degree = Vec::with_capacity(parts.len());
    for (fac, mult) in &parts {
        for (part, k) in distinct_degree(fac) {
            degree = degree.lcm(&(ctx.s() * k));
            parts_by_degree.push((part, *mult));
        }
    }
    if degree > ctx.s() && degree > budget.max_degree {
        return Err(PolyError::BudgetExceeded {
            required: degree,
            budget: budget.max_degree,
        });
    }
    let ambient = if degree == ctx.s() {
        ctx.clone()
    } else {
        default_field(ctx.p(), degree)?
    };
    let map = embedding_between(ctx, &ambient)?;
    let mut roots = Vec::new();
    for (part, mult) in parts_by_degree {
        // every factor of `part` splits in `ambient` by choice of degree
        let mut found = Vec::new();
        extract_roots(&part.lift(&map)?.monic(), &mut found);
        roots.extend(found.into_iter().map(|r| (r, mult)));
    }
    roots.sort();
    Ok(RootSet { roots, ambient })
}
