use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::bounds::{ihara_square_bound, lambda_bound};
use super::checks::check_splitting;
use super::closure::{compute_closure, ClosureLimits, ClosureResult};
use super::equiv::{canonical_key, EquivalenceKey};
use super::KummerSpec;

/// Pass/fail for each hypothesis. `shape` is `deg f < m`; when it fails the
/// recursion-level checks are reported as failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisChecks {
    pub shape: bool,
    pub q_mod_m: bool,
    pub gcd_m_q: bool,
    pub gcd_condition: bool,
    pub splits: bool,
    pub disjoint_zero_sets: bool,
    pub separable_f: bool,
    pub coprime_b1_b2: bool,
}

impl HypothesisChecks {
    pub fn all_pass(&self) -> bool {
        self.first_failure().is_none()
    }

    /// Name of the first failing check, in a fixed order.
    pub fn first_failure(&self) -> Option<&'static str> {
        [
            ("shape", self.shape),
            ("q_mod_m", self.q_mod_m),
            ("gcd_m_q", self.gcd_m_q),
            ("gcd_condition", self.gcd_condition),
            ("splits", self.splits),
            ("disjoint_zero_sets", self.disjoint_zero_sets),
            ("separable_f", self.separable_f),
            ("coprime_b1_b2", self.coprime_b1_b2),
        ]
        .into_iter()
        .find(|(_, ok)| !ok)
        .map(|(name, _)| name)
    }
}

/// Advisory comparison with `A(q) = sqrt(q) - 1` for square `q`. Never
/// affects certification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Optimality {
    pub ihara: u64,
    pub attained: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerReport {
    pub spec: KummerSpec,
    pub checks: HypothesisChecks,
    /// Absent only when the shape check fails.
    pub closure: Option<ClosureResult>,
    pub split_bound: Option<u32>,
    pub lambda_bound: Option<Ratio<u64>>,
    pub certified: bool,
    pub canonical_key: EquivalenceKey,
    pub optimality: Option<Optimality>,
}

impl TowerReport {
    /// Size of the closed set; `None` when the closure was skipped or ran out
    /// of budget.
    pub fn s0_size(&self) -> Option<usize> {
        self.closure
            .as_ref()
            .filter(|c| c.is_closed())
            .map(|c| c.size())
    }
}

/// Evaluates every hypothesis without computing the closure. The second value
/// is the split bound, present when the splitting checks pass.
pub fn hypothesis_checks(spec: &KummerSpec) -> (HypothesisChecks, Option<u32>) {
    let split = check_splitting(spec);
    let rec = spec.to_recursion().ok();
    let checks = HypothesisChecks {
        shape: rec.is_some(),
        q_mod_m: spec.q() % spec.m() as u128 == 1,
        gcd_m_q: split.gcd_m_q,
        gcd_condition: split.gcd_condition,
        splits: split.splits,
        disjoint_zero_sets: split.disjoint_zero_sets,
        separable_f: spec.f().is_separable().unwrap_or(false),
        coprime_b1_b2: rec.as_ref().is_some_and(|r| r.is_coprime()),
    };
    (checks, split.split_bound)
}

/// Runs every hypothesis check and the closure, even when a check fails.
pub fn certify(spec: &KummerSpec, limits: ClosureLimits) -> TowerReport {
    let (checks, split_bound) = hypothesis_checks(spec);
    let rec = spec.to_recursion().ok();
    let closure = rec
        .as_ref()
        .map(|r| compute_closure(r, limits).expect("recursion built from a valid spec"));
    let closed = closure.as_ref().is_some_and(|c| c.is_closed());
    let lambda = closure
        .as_ref()
        .filter(|_| closed && checks.all_pass())
        .and_then(|c| lambda_bound(spec.m(), c.size()).ok());
    let certified = lambda.is_some();
    let optimality = lambda.and_then(|l| {
        let ihara = ihara_square_bound(spec.q())? as u64;
        Some(Optimality {
            ihara,
            attained: l == Ratio::from_integer(ihara),
        })
    });
    TowerReport {
        spec: spec.clone(),
        checks,
        closure,
        split_bound: if certified { split_bound } else { None },
        lambda_bound: lambda,
        certified,
        canonical_key: canonical_key(spec),
        optimality,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;
    use crate::notation::{parse_element, parse_poly};

    fn spec(ctx: &FieldCtx, alpha: &str, f: &str) -> KummerSpec {
        KummerSpec::new(
            ctx,
            2,
            parse_element(ctx, alpha).unwrap(),
            parse_poly(ctx, f).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn optimal_tower_over_gf9() {
        let f9 = FieldCtx::extension(3, 2, Some(&[2, 2, 1])).unwrap();
        let r = certify(&spec(&f9, "1", "T"), ClosureLimits::default());
        assert!(r.certified);
        assert_eq!(r.lambda_bound, Some(Ratio::from_integer(2)));
        assert_eq!(r.split_bound, Some(2));
        assert_eq!(
            r.optimality,
            Some(Optimality {
                ihara: 2,
                attained: true
            })
        );
    }

    #[test]
    fn failing_disjointness_still_reports_closure() {
        let f9 = FieldCtx::extension(3, 2, Some(&[2, 2, 1])).unwrap();
        let r = certify(&spec(&f9, "2", "T - 1"), ClosureLimits::default());
        assert!(!r.certified);
        assert!(!r.checks.disjoint_zero_sets);
        assert_eq!(r.checks.first_failure(), Some("disjoint_zero_sets"));
        assert!(r.closure.is_some());
        assert_eq!(r.lambda_bound, None);
        assert_eq!(r.split_bound, None);
    }

    #[test]
    fn shape_failure_skips_closure() {
        let f9 = FieldCtx::extension(3, 2, Some(&[2, 2, 1])).unwrap();
        let r = certify(&spec(&f9, "1", "T^2 + T"), ClosureLimits::default());
        assert!(!r.checks.shape);
        assert!(r.closure.is_none());
        assert!(!r.certified);
    }

    #[test]
    fn constant_f_fails_gcd_condition() {
        let f9 = FieldCtx::extension(3, 2, Some(&[2, 2, 1])).unwrap();
        let r = certify(&spec(&f9, "1", "2"), ClosureLimits::default());
        assert!(!r.checks.gcd_condition);
        assert!(!r.certified);
    }
}
