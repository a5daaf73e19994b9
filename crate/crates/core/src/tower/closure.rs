//! The minimal finite set S0 containing the zeros of `b1` and `b2` and closed
//! under `γ ↦ Z(σ_γ)`.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{sigma_lifted, RecursionSpec, TowerError};
use crate::gf::{default_field, embedding_between, EmbeddingMap, FieldCtx, FieldElement};
use crate::poly::{all_roots, distinct_roots_in, DegreeBudget, Poly, PolyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureLimits {
    pub max_size: usize,
    /// Degree over GF(p) of the largest field the closure may move into.
    pub max_ambient_degree: usize,
}

impl Default for ClosureLimits {
    fn default() -> Self {
        ClosureLimits {
            max_size: 64,
            max_ambient_degree: 16,
        }
    }
}

impl ClosureLimits {
    /// Keeps every element inside the base field.
    pub fn within_base(field: &FieldCtx) -> Self {
        ClosureLimits {
            max_ambient_degree: field.s(),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureStatus {
    Closed,
    ExceededSize,
    ExceededDegree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    pub status: ClosureStatus,
    /// Distinct, in canonical order of `ambient`.
    pub elements: Vec<FieldElement>,
    /// Zeros of `b1` and `b2`, in canonical order.
    pub seeds: Vec<FieldElement>,
    pub ambient: FieldCtx,
    /// How the base field sits inside `ambient`.
    pub embedding: EmbeddingMap,
    pub generations: usize,
    pub seed_size: usize,
}

impl ClosureResult {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn is_closed(&self) -> bool {
        self.status == ClosureStatus::Closed
    }
}

struct State {
    ambient: FieldCtx,
    embedding: EmbeddingMap,
    b1: Poly,
    b2: Poly,
    all: BTreeSet<FieldElement>,
    seeds: BTreeSet<FieldElement>,
    pending: BTreeSet<FieldElement>,
    next: BTreeSet<FieldElement>,
}

impl State {
    fn move_to(&mut self, bigger: &FieldCtx) -> Result<(), TowerError> {
        let step = embedding_between(&self.ambient, bigger)?;
        let push = |set: &BTreeSet<FieldElement>| -> Result<BTreeSet<FieldElement>, TowerError> {
            set.iter().map(|e| Ok(step.apply(e)?)).collect()
        };
        self.all = push(&self.all)?;
        self.seeds = push(&self.seeds)?;
        self.pending = push(&self.pending)?;
        self.next = push(&self.next)?;
        self.b1 = self.b1.lift(&step)?;
        self.b2 = self.b2.lift(&step)?;
        self.embedding = self.embedding.then(&step)?;
        self.ambient = bigger.clone();
        Ok(())
    }

    /// Roots of `g` (a polynomial over the current ambient), moving to a
    /// larger field first if needed. `None` when that field exceeds the budget.
    fn roots(
        &mut self,
        g: &Poly,
        budget: DegreeBudget,
    ) -> Result<Option<Vec<FieldElement>>, TowerError> {
        let rs = match all_roots(g, budget) {
            Ok(rs) => rs,
            Err(PolyError::BudgetExceeded { .. }) => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        if rs.ambient != self.ambient {
            self.move_to(&rs.ambient)?;
        }
        Ok(Some(rs.distinct().cloned().collect()))
    }
}

/// Worklist fixed point. Elements are processed generation by generation, in
/// canonical order within a generation.
pub fn compute_closure(
    rec: &RecursionSpec,
    limits: ClosureLimits,
) -> Result<ClosureResult, TowerError> {
    let budget = DegreeBudget {
        max_degree: limits.max_ambient_degree,
    };
    let mut st = State {
        ambient: rec.field().clone(),
        embedding: EmbeddingMap::identity(rec.field()),
        b1: rec.b1().clone(),
        b2: rec.b2().clone(),
        all: BTreeSet::new(),
        seeds: BTreeSet::new(),
        pending: BTreeSet::new(),
        next: BTreeSet::new(),
    };
    let finish = |st: State, status, generations| ClosureResult {
        status,
        seed_size: st.seeds.len(),
        elements: st.all.into_iter().collect(),
        seeds: st.seeds.into_iter().collect(),
        ambient: st.ambient,
        embedding: st.embedding,
        generations,
    };

    for which in 0..2 {
        let g = if which == 0 {
            st.b1.clone()
        } else {
            st.b2.clone()
        };
        if g.is_constant() {
            continue;
        }
        match st.roots(&g, budget)? {
            Some(roots) => {
                for r in roots {
                    st.seeds.insert(r.clone());
                    st.all.insert(r.clone());
                    st.pending.insert(r);
                }
            }
            None => return Ok(finish(st, ClosureStatus::ExceededDegree, 0)),
        }
    }
    if st.all.len() > limits.max_size {
        return Ok(finish(st, ClosureStatus::ExceededSize, 0));
    }

    let mut generations = 0;
    while !st.pending.is_empty() {
        generations += 1;
        while let Some(gamma) = st.pending.pop_first() {
            let sigma = sigma_lifted(&st.b1, &st.b2, &gamma, rec.m());
            let Some(roots) = st.roots(&sigma, budget)? else {
                return Ok(finish(st, ClosureStatus::ExceededDegree, generations));
            };
            for r in roots {
                if st.all.insert(r.clone()) {
                    st.next.insert(r);
                }
            }
            if st.all.len() > limits.max_size {
                return Ok(finish(st, ClosureStatus::ExceededSize, generations));
            }
        }
        st.pending = std::mem::take(&mut st.next);
    }
    Ok(finish(st, ClosureStatus::Closed, generations))
}

/// Whether every root of `h` lies in `set`, decided without root finding:
/// with `P = Π_{s∈set} (T - s)`, this holds iff `h | P^{deg h}`.
fn roots_within(h: &Poly, vanishing: &Poly) -> bool {
    let Some(d) = h.degree() else {
        return false;
    };
    if d == 0 {
        return true;
    }
    vanishing
        .powmod(d as u128, h)
        .map(|r| r.is_zero())
        .unwrap_or(false)
}

fn vanishing_poly(ctx: &FieldCtx, set: &[FieldElement]) -> Poly {
    set.iter().fold(Poly::one(ctx), |acc, s| {
        acc.mul_(&Poly::raw(ctx, vec![ctx.fneg(s), ctx.one()]))
    })
}

/// Whether `set` (inside the target of `embedding`) contains the zeros of
/// `b1`, `b2` and of every `σ_γ`, `γ ∈ set`.
pub fn is_closed_set(
    rec: &RecursionSpec,
    embedding: &EmbeddingMap,
    set: &[FieldElement],
) -> Result<bool, TowerError> {
    let ctx = embedding.target();
    let b1 = rec.b1().lift(embedding)?;
    let b2 = rec.b2().lift(embedding)?;
    let p = vanishing_poly(ctx, set);
    if !roots_within(&b1, &p) || !roots_within(&b2, &p) {
        return Ok(false);
    }
    for gamma in set {
        if !roots_within(&sigma_lifted(&b1, &b2, gamma, rec.m()), &p) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Re-checks a result independently of the root finder: elements distinct and
/// sorted, seeds present, and (when closed) the three containment conditions.
pub fn verify_closure(rec: &RecursionSpec, result: &ClosureResult) -> Result<bool, TowerError> {
    if !result.elements.windows(2).all(|w| w[0] < w[1]) {
        return Ok(false);
    }
    if result.embedding.source() != rec.field() || result.embedding.target() != &result.ambient {
        return Ok(false);
    }
    if !result
        .seeds
        .iter()
        .all(|s| result.elements.binary_search(s).is_ok())
    {
        return Ok(false);
    }
    if !result.is_closed() {
        return Ok(true);
    }
    is_closed_set(rec, &result.embedding, &result.elements)
}

/// Removing any non-seed element of a closed result leaves a set that is no
/// longer closed.
pub fn closure_is_minimal(rec: &RecursionSpec, result: &ClosureResult) -> Result<bool, TowerError> {
    if !result.is_closed() {
        return Err(TowerError::NotClosed(result.status));
    }
    for (i, x) in result.elements.iter().enumerate() {
        if result.seeds.binary_search(x).is_ok() {
            continue;
        }
        let mut reduced = result.elements.clone();
        reduced.remove(i);
        if is_closed_set(rec, &result.embedding, &reduced)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A field containing both targets, with maps that agree on the common base
/// field of `a` and `b`.
pub fn common_ambient(
    a: &EmbeddingMap,
    b: &EmbeddingMap,
) -> Result<(EmbeddingMap, EmbeddingMap), TowerError> {
    if a.source() != b.source() {
        return Err(TowerError::Mismatch);
    }
    let (ta, tb) = (a.target(), b.target());
    let common = if tb.s() <= ta.s() && ta.s() % tb.s() == 0 {
        ta.clone()
    } else if ta.s() < tb.s() && tb.s() % ta.s() == 0 {
        tb.clone()
    } else {
        default_field(ta.p(), ta.s().lcm(&tb.s()))?
    };
    let into_a = embedding_between(ta, &common)?;
    let base_image = into_a.apply(a.image())?;
    let modulus = Poly::raw(
        &common,
        tb.modulus()
            .iter()
            .map(|&c| common.constant(c as i64))
            .collect(),
    );
    for root in distinct_roots_in(&modulus, &EmbeddingMap::identity(&common))? {
        let candidate = EmbeddingMap::from_image(tb, &common, root)?;
        if candidate.apply(b.image())? == base_image {
            return Ok((into_a, candidate));
        }
    }
    Err(TowerError::Mismatch)
}
