//! Process-wide memo of default-modulus fields and embeddings. Both are pure
//! functions of their keys, so caching does not change results.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::{is_irreducible, EmbeddingMap, FieldCtx, FieldLabel, GfError};

type FieldMemo = Mutex<HashMap<(u32, usize), FieldCtx>>;
type EmbedMemo = Mutex<HashMap<(FieldLabel, FieldLabel), EmbeddingMap>>;

fn fields() -> &'static FieldMemo {
    static FIELDS: OnceLock<FieldMemo> = OnceLock::new();
    FIELDS.get_or_init(Default::default)
}

fn embeddings() -> &'static EmbedMemo {
    static EMBEDS: OnceLock<EmbedMemo> = OnceLock::new();
    EMBEDS.get_or_init(Default::default)
}

/// Smallest monic irreducible of degree `s` over GF(p), comparing the lower
/// coefficients lexicographically with the constant term most significant.
fn smallest_irreducible(p: u32, s: usize) -> Result<Vec<u32>, GfError> {
    let count = (p as u128).pow(s as u32);
    // the constant term is the leading digit; skip the block where it is 0
    let start = if s > 1 { count / p as u128 } else { 0 };
    for n in start..count {
        let mut lower = vec![0u32; s];
        let mut r = n;
        for slot in lower.iter_mut().rev() {
            *slot = (r % p as u128) as u32;
            r /= p as u128;
        }
        lower.push(1);
        if is_irreducible(p, &lower)? {
            return Ok(lower);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// GF(p^s) with the default modulus. GF(p) uses the placeholder `T`.
pub fn default_field(p: u32, s: usize) -> Result<FieldCtx, GfError> {
    if s == 1 {
        return FieldCtx::prime(p);
    }
    if let Some(ctx) = fields().lock().unwrap().get(&(p, s)) {
        return Ok(ctx.clone());
    }
    if !super::is_prime(p as u64) {
        return Err(GfError::NotPrime(p as u64));
    }
    let modulus = smallest_irreducible(p, s)?;
    let ctx = FieldCtx::trusted(p, s, modulus)?;
    let mut memo = fields().lock().unwrap();
    Ok(memo.entry((p, s)).or_insert(ctx).clone())
}

/// The canonical embedding `from → to` (see [`EmbeddingMap::find`]).
pub fn embedding_between(from: &FieldCtx, to: &FieldCtx) -> Result<EmbeddingMap, GfError> {
    if from == to {
        return Ok(EmbeddingMap::identity(from));
    }
    let key = (from.label(), to.label());
    if let Some(map) = embeddings().lock().unwrap().get(&key) {
        return Ok(map.clone());
    }
    let map = EmbeddingMap::find(from, to)?;
    let mut memo = embeddings().lock().unwrap();
    Ok(memo.entry(key).or_insert(map).clone())
}
