//! Exhaustive search over `(α, f)` for a fixed field, exponent and `deg f`,
//! with orbit deduplication under the scaling action.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::num::NonZeroUsize;

use num_rational::Ratio;

use crate::gf::{FieldCtx, FieldElement};
use crate::poly::Poly;
use crate::tower::{
    canonical_key, certify, hypothesis_checks, orbit, ClosureLimits, EquivalenceKey, KummerSpec,
    TowerError, TowerReport,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub field: FieldCtx,
    pub m: u32,
    pub f_degree: usize,
    /// Restricts α to these values; `None` means every nonzero element.
    pub alpha_filter: Option<Vec<FieldElement>>,
    pub limits: ClosureLimits,
    pub dedup: bool,
    pub parallelism: usize,
}

impl SearchConfig {
    /// Full search with default closure limits, dedup on, and one worker per
    /// available core.
    pub fn new(field: &FieldCtx, m: u32, f_degree: usize) -> Self {
        SearchConfig {
            field: field.clone(),
            m,
            f_degree,
            alpha_filter: None,
            limits: ClosureLimits::default(),
            dedup: true,
            parallelism: std::thread::available_parallelism()
                .map(NonZeroUsize::get)
                .unwrap_or(1),
        }
    }

    fn alphas(&self) -> Vec<FieldElement> {
        match &self.alpha_filter {
            Some(list) => {
                let set: BTreeSet<_> = list
                    .iter()
                    .filter(|a| !a.is_zero() && self.field.owns(a))
                    .cloned()
                    .collect();
                set.into_iter().collect()
            }
            None => self.field.elements().skip(1).collect(),
        }
    }

    /// `|alphas| · (q-1) · q^deg`.
    pub fn candidate_count(&self) -> u128 {
        let q = self.field.order();
        self.alphas().len() as u128 * (q - 1) * q.pow(self.f_degree as u32)
    }

    fn admits(&self, spec: &KummerSpec) -> bool {
        spec.f().degree() == Some(self.f_degree)
            && self
                .alpha_filter
                .as_ref()
                .is_none_or(|list| list.contains(spec.alpha()))
    }
}

/// Every candidate `(α, f)` with `deg f` exactly `f_degree`, ordered by `α`
/// and then by the coefficients of `f` from the constant term up.
pub fn enumerate_candidates(cfg: &SearchConfig) -> impl Iterator<Item = KummerSpec> + '_ {
    let field = cfg.field.clone();
    let q = field.order();
    let lower = q.pow(cfg.f_degree as u32);
    let per_alpha = lower * (q - 1);
    let alphas = cfg.alphas();
    (0..alphas.len() as u128 * per_alpha).map(move |n| {
        let alpha = alphas[(n / per_alpha) as usize].clone();
        let rest = n % per_alpha;
        let (mut digits, lead) = (rest / (q - 1), rest % (q - 1));
        let mut coeffs = vec![field.zero(); cfg.f_degree + 1];
        for k in (0..cfg.f_degree).rev() {
            coeffs[k] = field.element_at(digits % q).expect("index below q");
            digits /= q;
        }
        coeffs[cfg.f_degree] = field.element_at(lead + 1).expect("index below q");
        let f = Poly::new(&field, coeffs).expect("coefficients from the field");
        KummerSpec::new(&field, cfg.m, alpha, f).expect("nonzero α and f")
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchClass {
    pub key: EquivalenceKey,
    pub representative: TowerReport,
    /// Candidates in this class.
    pub orbit_size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SearchOutcome {
    pub total_candidates: u64,
    pub passing_equations: u64,
    pub classes: Vec<SearchClass>,
    pub rejected_by: BTreeMap<String, u64>,
    pub exceeded_budget: u64,
}

impl SearchOutcome {
    pub fn keys(&self) -> Vec<EquivalenceKey> {
        self.classes.iter().map(|c| c.key.clone()).collect()
    }
}

enum Verdict {
    Certified(Box<TowerReport>),
    Rejected(&'static str),
    Budget,
}

fn judge(spec: &KummerSpec, limits: ClosureLimits) -> Verdict {
    let (checks, _) = hypothesis_checks(spec);
    if let Some(name) = checks.first_failure() {
        return Verdict::Rejected(name);
    }
    let report = certify(spec, limits);
    if report.certified {
        Verdict::Certified(Box::new(report))
    } else {
        Verdict::Budget
    }
}

struct Group {
    key: EquivalenceKey,
    first: KummerSpec,
    size: u64,
}

fn fnv(text: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn group_by_orbit(cfg: &SearchConfig) -> Vec<Group> {
    let mut seen: HashSet<KummerSpec> = HashSet::new();
    let mut groups = Vec::new();
    for spec in enumerate_candidates(cfg) {
        if seen.contains(&spec) {
            continue;
        }
        let members: HashSet<KummerSpec> = orbit(&spec)
            .map(|(_, t)| t)
            .filter(|t| cfg.admits(t))
            .collect();
        groups.push(Group {
            key: canonical_key(&spec),
            first: spec,
            size: members.len() as u64,
        });
        seen.extend(members);
    }
    groups
}

fn singletons(cfg: &SearchConfig) -> Vec<Group> {
    enumerate_candidates(cfg)
        .map(|spec| Group {
            key: canonical_key(&spec),
            first: spec,
            size: 1,
        })
        .collect()
}

/// Certifies every candidate (once per orbit when `dedup` is set) and
/// collects the certified towers by equivalence class. The result does not
/// depend on `parallelism`.
pub fn run_search(cfg: &SearchConfig) -> Result<SearchOutcome, TowerError> {
    if cfg.m < 2 {
        return Err(TowerError::Exponent(cfg.m));
    }
    let groups = if cfg.dedup {
        group_by_orbit(cfg)
    } else {
        singletons(cfg)
    };
    let workers = cfg.parallelism.max(1);
    let mut shards: Vec<Vec<&Group>> = vec![Vec::new(); workers];
    for g in &groups {
        shards[(fnv(g.key.as_str()) % workers as u64) as usize].push(g);
    }
    let judged: Vec<(&Group, Verdict)> = std::thread::scope(|scope| {
        let handles: Vec<_> = shards
            .into_iter()
            .map(|shard| {
                scope.spawn(move || {
                    shard
                        .into_iter()
                        .map(|g| (g, judge(&g.first, cfg.limits)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("search worker panicked"))
            .collect()
    });

    let mut out = SearchOutcome {
        total_candidates: groups.iter().map(|g| g.size).sum(),
        ..SearchOutcome::default()
    };
    let mut classes: BTreeMap<EquivalenceKey, SearchClass> = BTreeMap::new();
    for (g, verdict) in judged {
        match verdict {
            Verdict::Certified(report) => {
                out.passing_equations += g.size;
                let class = classes.entry(g.key.clone()).or_insert_with(|| SearchClass {
                    key: g.key.clone(),
                    representative: (*report).clone(),
                    orbit_size: 0,
                });
                // keep the earliest candidate so the choice is order-free
                if candidate_order(&report.spec, &class.representative.spec).is_lt() {
                    class.representative = *report;
                }
                class.orbit_size += g.size;
            }
            Verdict::Rejected(name) => *out.rejected_by.entry(name.into()).or_default() += g.size,
            Verdict::Budget => out.exceeded_budget += g.size,
        }
    }
    out.classes = classes.into_values().collect();
    out.classes.sort_by(|a, b| {
        let lam = |c: &SearchClass| {
            c.representative
                .lambda_bound
                .unwrap_or(Ratio::from_integer(0))
        };
        lam(b).cmp(&lam(a)).then_with(|| a.key.cmp(&b.key))
    });
    Ok(out)
}

fn candidate_order(a: &KummerSpec, b: &KummerSpec) -> std::cmp::Ordering {
    a.alpha()
        .cmp(b.alpha())
        .then_with(|| a.f().coeffs().cmp(b.f().coeffs()))
}

/// Splits the classes of `outcome` into those whose key is in `known` and
/// the rest.
pub fn classify_new<'a>(
    outcome: &'a SearchOutcome,
    known: &[EquivalenceKey],
) -> (Vec<&'a SearchClass>, Vec<&'a SearchClass>) {
    outcome.classes.iter().partition(|c| known.contains(&c.key))
}
