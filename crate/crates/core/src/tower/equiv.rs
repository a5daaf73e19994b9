//! The scaling action `x ↦ cx, y ↦ cy` of GF(q)^*, which sends `(α, f)` to
//! `(c^{-m} α, f(cT))` and preserves the tower.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::closure::{common_ambient, compute_closure, ClosureLimits};
use super::{KummerSpec, TowerError};
use crate::gf::FieldElement;

pub fn transform(spec: &KummerSpec, c: &FieldElement) -> Result<KummerSpec, TowerError> {
    let field = spec.field();
    if !field.owns(c) {
        return Err(crate::gf::GfError::ContextMismatch.into());
    }
    if c.is_zero() {
        return Err(TowerError::ZeroScale);
    }
    let beta = field.fmul(&field.pow(c, -(spec.m() as i128))?, spec.alpha());
    let g = spec.f().compose_linear(c)?;
    KummerSpec::new(field, spec.m(), beta, g)
}

/// `(c, transform(spec, c))` for every nonzero `c`, in canonical order of `c`.
pub fn orbit(spec: &KummerSpec) -> impl Iterator<Item = (FieldElement, KummerSpec)> + '_ {
    spec.field().elements().skip(1).map(move |c| {
        let t = transform(spec, &c).expect("nonzero scale in the spec's field");
        (c, t)
    })
}

/// The scalings that fix `spec`. They are m-th roots of unity.
pub fn stabilizer(spec: &KummerSpec) -> Vec<FieldElement> {
    orbit(spec)
        .filter(|(_, t)| t == spec)
        .map(|(c, _)| c)
        .collect()
}

/// Text encoding of the smallest member of an orbit, comparing `α` first and
/// then the coefficients of `f` from the constant term up.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EquivalenceKey(String);

impl EquivalenceKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EquivalenceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn encode(spec: &KummerSpec) -> EquivalenceKey {
    let field = spec.field();
    let coeffs = |e: &FieldElement| {
        e.coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let f = spec
        .f()
        .coeffs()
        .iter()
        .map(|c| format!("[{}]", coeffs(c)))
        .collect::<Vec<_>>()
        .join(",");
    let modulus = field
        .modulus()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",");
    EquivalenceKey(format!(
        "{}^{}[{}]|m={}|alpha=[{}]|f=[{}]",
        field.p(),
        field.s(),
        modulus,
        spec.m(),
        coeffs(spec.alpha()),
        f
    ))
}

/// The orbit member that is smallest in canonical order.
pub fn canonical_representative(spec: &KummerSpec) -> KummerSpec {
    orbit(spec)
        .map(|(_, t)| t)
        .min_by(|a, b| {
            a.alpha()
                .cmp(b.alpha())
                .then_with(|| a.f().coeffs().cmp(b.f().coeffs()))
        })
        .expect("GF(q)^* is nonempty")
}

pub fn canonical_key(spec: &KummerSpec) -> EquivalenceKey {
    encode(&canonical_representative(spec))
}

/// A scaling `c` with `transform(a, c) = b`, if there is one.
pub fn verify_equivalence(
    a: &KummerSpec,
    b: &KummerSpec,
) -> Result<Option<FieldElement>, TowerError> {
    if a.field() != b.field() || a.m() != b.m() {
        return Err(TowerError::Mismatch);
    }
    Ok(orbit(a).find(|(_, t)| t == b).map(|(c, _)| c))
}

/// Whether `S0(transform(spec, c)) = { c^{-1} λ : λ ∈ S0(spec) }`.
pub fn closure_transform_check(
    spec: &KummerSpec,
    c: &FieldElement,
    limits: ClosureLimits,
) -> Result<bool, TowerError> {
    let moved = transform(spec, c)?;
    let original = compute_closure(&spec.to_recursion()?, limits)?;
    let image = compute_closure(&moved.to_recursion()?, limits)?;
    for r in [&original, &image] {
        if !r.is_closed() {
            return Err(TowerError::NotClosed(r.status));
        }
    }
    let (into_a, into_b) = common_ambient(&original.embedding, &image.embedding)?;
    let common = into_a.target();
    let c_inv = common.finv(&into_a.apply(&original.embedding.apply(c)?)?)?;
    let mut scaled = original
        .elements
        .iter()
        .map(|l| Ok(common.fmul(&c_inv, &into_a.apply(l)?)))
        .collect::<Result<Vec<_>, TowerError>>()?;
    let mut other = image
        .elements
        .iter()
        .map(|l| Ok(into_b.apply(l)?))
        .collect::<Result<Vec<_>, TowerError>>()?;
    scaled.sort();
    other.sort();
    Ok(scaled == other)
}
