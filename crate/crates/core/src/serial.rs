//! Stable JSON shapes for specs, closures, reports and search outcomes.
//!
//! Field elements and polynomials are written in the text notation of
//! [`crate::notation`] and read back against the field stored next to them.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::gf::{EmbeddingMap, FieldCtx, FieldDescriptor, FieldElement};
use crate::notation::{parse_element, parse_poly};
use crate::search::{SearchClass, SearchOutcome};
use crate::tower::{
    ClosureResult, ClosureStatus, EquivalenceKey, HypothesisChecks, KummerSpec, Optimality,
    TowerReport,
};

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct DecodeError(String);

fn fail(e: impl ToString) -> DecodeError {
    DecodeError(e.to_string())
}

fn element(ctx: &FieldCtx, text: &str) -> Result<FieldElement, DecodeError> {
    parse_element(ctx, text).map_err(fail)
}

fn texts(items: &[FieldElement]) -> Vec<String> {
    items.iter().map(|e| e.to_string()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecRepr {
    pub field: FieldDescriptor,
    pub m: u32,
    pub alpha: String,
    pub f: String,
}

impl From<&KummerSpec> for SpecRepr {
    fn from(spec: &KummerSpec) -> Self {
        SpecRepr {
            field: spec.field().descriptor(),
            m: spec.m(),
            alpha: spec.alpha().to_string(),
            f: spec.f().to_string(),
        }
    }
}

impl TryFrom<SpecRepr> for KummerSpec {
    type Error = DecodeError;

    fn try_from(r: SpecRepr) -> Result<Self, DecodeError> {
        let ctx = r.field.build().map_err(fail)?;
        let alpha = element(&ctx, &r.alpha)?;
        let f = parse_poly(&ctx, &r.f).map_err(fail)?;
        KummerSpec::new(&ctx, r.m, alpha, f).map_err(fail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureRepr {
    pub status: ClosureStatus,
    pub size: usize,
    pub ambient_degree: usize,
    pub ambient: FieldDescriptor,
    pub base: FieldDescriptor,
    /// Image of the base generator in the ambient field.
    pub base_image: String,
    pub elements: Vec<String>,
    pub seeds: Vec<String>,
    pub generations: usize,
    pub seed_size: usize,
}

impl From<&ClosureResult> for ClosureRepr {
    fn from(c: &ClosureResult) -> Self {
        ClosureRepr {
            status: c.status,
            size: c.size(),
            ambient_degree: c.ambient.s(),
            ambient: c.ambient.descriptor(),
            base: c.embedding.source().descriptor(),
            base_image: c.embedding.image().to_string(),
            elements: texts(&c.elements),
            seeds: texts(&c.seeds),
            generations: c.generations,
            seed_size: c.seed_size,
        }
    }
}

impl TryFrom<ClosureRepr> for ClosureResult {
    type Error = DecodeError;

    fn try_from(r: ClosureRepr) -> Result<Self, DecodeError> {
        let ambient = r.ambient.build().map_err(fail)?;
        let base = r.base.build().map_err(fail)?;
        let image = element(&ambient, &r.base_image)?;
        let embedding = EmbeddingMap::from_image(&base, &ambient, image).map_err(fail)?;
        let read = |xs: &[String]| {
            xs.iter()
                .map(|t| element(&ambient, t))
                .collect::<Result<Vec<_>, _>>()
        };
        let elements = read(&r.elements)?;
        if elements.len() != r.size || ambient.s() != r.ambient_degree {
            return Err(DecodeError(
                "size or degree disagrees with the listed data".into(),
            ));
        }
        Ok(ClosureResult {
            status: r.status,
            elements,
            seeds: read(&r.seeds)?,
            ambient,
            embedding,
            generations: r.generations,
            seed_size: r.seed_size,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaRepr {
    pub num: u64,
    pub den: u64,
}

impl From<Ratio<u64>> for LambdaRepr {
    fn from(r: Ratio<u64>) -> Self {
        LambdaRepr {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

impl TryFrom<LambdaRepr> for Ratio<u64> {
    type Error = DecodeError;

    fn try_from(r: LambdaRepr) -> Result<Self, DecodeError> {
        if r.den == 0 {
            return Err(DecodeError("zero denominator".into()));
        }
        Ok(Ratio::new(r.num, r.den))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRepr {
    pub spec: SpecRepr,
    pub checks: HypothesisChecks,
    pub closure: Option<ClosureRepr>,
    pub split_bound: Option<u32>,
    pub lambda_bound: Option<LambdaRepr>,
    pub certified: bool,
    pub canonical_key: EquivalenceKey,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimality: Option<Optimality>,
}

impl From<&TowerReport> for ReportRepr {
    fn from(r: &TowerReport) -> Self {
        ReportRepr {
            spec: (&r.spec).into(),
            checks: r.checks,
            closure: r.closure.as_ref().map(Into::into),
            split_bound: r.split_bound,
            lambda_bound: r.lambda_bound.map(Into::into),
            certified: r.certified,
            canonical_key: r.canonical_key.clone(),
            optimality: r.optimality,
        }
    }
}

impl TryFrom<ReportRepr> for TowerReport {
    type Error = DecodeError;

    fn try_from(r: ReportRepr) -> Result<Self, DecodeError> {
        Ok(TowerReport {
            spec: r.spec.try_into()?,
            checks: r.checks,
            closure: r.closure.map(TryInto::try_into).transpose()?,
            split_bound: r.split_bound,
            lambda_bound: r.lambda_bound.map(TryInto::try_into).transpose()?,
            certified: r.certified,
            canonical_key: r.canonical_key,
            optimality: r.optimality,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRepr {
    pub key: EquivalenceKey,
    pub orbit_size: u64,
    pub representative: ReportRepr,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeRepr {
    pub total_candidates: u64,
    pub passing_equations: u64,
    pub classes: Vec<ClassRepr>,
    pub rejected_by: BTreeMap<String, u64>,
    pub exceeded_budget: u64,
}

impl From<&SearchOutcome> for OutcomeRepr {
    fn from(o: &SearchOutcome) -> Self {
        OutcomeRepr {
            total_candidates: o.total_candidates,
            passing_equations: o.passing_equations,
            classes: o
                .classes
                .iter()
                .map(|c| ClassRepr {
                    key: c.key.clone(),
                    orbit_size: c.orbit_size,
                    representative: (&c.representative).into(),
                })
                .collect(),
            rejected_by: o.rejected_by.clone(),
            exceeded_budget: o.exceeded_budget,
        }
    }
}

impl TryFrom<OutcomeRepr> for SearchOutcome {
    type Error = DecodeError;

    fn try_from(o: OutcomeRepr) -> Result<Self, DecodeError> {
        let classes = o
            .classes
            .into_iter()
            .map(|c| {
                Ok(SearchClass {
                    key: c.key,
                    orbit_size: c.orbit_size,
                    representative: c.representative.try_into()?,
                })
            })
            .collect::<Result<Vec<_>, DecodeError>>()?;
        Ok(SearchOutcome {
            total_candidates: o.total_candidates,
            passing_equations: o.passing_equations,
            classes,
            rejected_by: o.rejected_by,
            exceeded_budget: o.exceeded_budget,
        })
    }
}

/// One CSV line per class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub key: String,
    pub alpha: String,
    pub f: String,
    pub s0_size: usize,
    pub lambda_num: u64,
    pub lambda_den: u64,
    pub orbit_size: u64,
}

impl SearchOutcome {
    pub fn rows(&self) -> Vec<ClassRow> {
        self.classes
            .iter()
            .map(|c| {
                let r = &c.representative;
                let lambda = r.lambda_bound.unwrap_or(Ratio::from_integer(0));
                ClassRow {
                    key: c.key.to_string(),
                    alpha: r.spec.alpha().to_string(),
                    f: r.spec.f().to_string(),
                    s0_size: r.s0_size().unwrap_or(0),
                    lambda_num: *lambda.numer(),
                    lambda_den: *lambda.denom(),
                    orbit_size: c.orbit_size,
                }
            })
            .collect()
    }
}

macro_rules! via_repr {
    ($ty:ty, $repr:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                <$repr>::from(self).serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                <$repr>::deserialize(d)?
                    .try_into()
                    .map_err(D::Error::custom)
            }
        }
    };
}

via_repr!(KummerSpec, SpecRepr);
via_repr!(ClosureResult, ClosureRepr);
via_repr!(TowerReport, ReportRepr);
via_repr!(SearchOutcome, OutcomeRepr);
