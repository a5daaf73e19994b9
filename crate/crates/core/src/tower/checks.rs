use serde::{Deserialize, Serialize};

use super::KummerSpec;
use crate::gf::EmbeddingMap;
use crate::poly::distinct_roots_in;

/// Outcome of the splitting hypotheses: `T^m + α` splits into distinct linear
/// factors over GF(q) and shares no zero with `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCheck {
    /// gcd(m, q) = 1
    pub gcd_m_q: bool,
    /// gcd(m, deg f) = 1
    pub gcd_condition: bool,
    pub splits: bool,
    pub disjoint_zero_sets: bool,
    /// `m` when every condition holds.
    pub split_bound: Option<u32>,
}

impl SplitCheck {
    pub fn passed(&self) -> bool {
        self.split_bound.is_some()
    }
}

pub fn check_splitting(spec: &KummerSpec) -> SplitCheck {
    let m = spec.m() as u128;
    let gcd_m_q = num_integer::gcd(m, spec.q()) == 1;
    let deg_f = spec.f().degree().unwrap_or(0);
    let gcd_condition = num_integer::gcd(spec.m() as usize, deg_f) == 1;
    let split_poly = spec.split_poly();
    let roots = distinct_roots_in(&split_poly, &EmbeddingMap::identity(spec.field()))
        .expect("T^m + alpha is nonzero");
    let splits = roots.len() == spec.m() as usize;
    let disjoint_zero_sets = spec.f().gcd_(&split_poly).is_one();
    let ok = gcd_m_q && gcd_condition && splits && disjoint_zero_sets;
    SplitCheck {
        gcd_m_q,
        gcd_condition,
        splits,
        disjoint_zero_sets,
        split_bound: ok.then_some(spec.m()),
    }
}
