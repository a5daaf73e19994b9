//! Recursive Kummer towers `y^m = (x^m - α f(x) + α) / f(x)` and the general
//! form `y^m = b1(x) / b2(x)`.

mod bounds;
mod certify;
mod checks;
mod closure;
mod equiv;

use crate::gf::{EmbeddingMap, FieldCtx, FieldElement, GfError};
use crate::poly::{Poly, PolyError};

pub use bounds::{ihara_square_bound, lambda_bound, places_lower_bound, split_places_bound};
pub use certify::{certify, hypothesis_checks, HypothesisChecks, Optimality, TowerReport};
pub use checks::{check_splitting, SplitCheck};
pub use closure::{
    closure_is_minimal, common_ambient, compute_closure, is_closed_set, verify_closure,
    ClosureLimits, ClosureResult, ClosureStatus,
};
pub use equiv::{
    canonical_key, canonical_representative, closure_transform_check, orbit, stabilizer, transform,
    verify_equivalence, EquivalenceKey,
};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum TowerError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("m must be at least 2, got {0}")]
    Exponent(u32),
    #[error("alpha must be nonzero")]
    ZeroAlpha,
    #[error("f must be a nonzero polynomial")]
    ZeroF,
    #[error("deg f = {deg_f} must be smaller than m = {m}")]
    Shape { deg_f: usize, m: u32 },
    #[error("deg b1 = {deg_b1:?} must equal m = {m}")]
    NumeratorDegree { deg_b1: Option<usize>, m: u32 },
    #[error("b2 must be nonzero of degree below m = {m}")]
    DenominatorDegree { m: u32 },
    #[error("b1 and b2 must be coprime polynomials")]
    NotCoprime,
    #[error("gcd(m, m - deg b2) must be 1")]
    GcdCondition,
    #[error("the bound 2m/(|S0|-1) is undefined for |S0| = {0}")]
    DegenerateBound(usize),
    #[error("closure did not close: {0:?}")]
    NotClosed(ClosureStatus),
    #[error("specs live over different fields or exponents")]
    Mismatch,
    #[error("scaling factor must be nonzero")]
    ZeroScale,
}

/// `(q, m, α, f)` defining `y^m = (x^m - α f(x) + α) / f(x)` over `field`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KummerSpec {
    field: FieldCtx,
    m: u32,
    alpha: FieldElement,
    f: Poly,
}

impl KummerSpec {
    pub fn new(field: &FieldCtx, m: u32, alpha: FieldElement, f: Poly) -> Result<Self, TowerError> {
        if m < 2 {
            return Err(TowerError::Exponent(m));
        }
        if !field.owns(&alpha) || f.ctx() != field {
            return Err(TowerError::Field(GfError::ContextMismatch));
        }
        if alpha.is_zero() {
            return Err(TowerError::ZeroAlpha);
        }
        if f.is_zero() {
            return Err(TowerError::ZeroF);
        }
        Ok(KummerSpec {
            field: field.clone(),
            m,
            alpha,
            f,
        })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn q(&self) -> u128 {
        self.field.order()
    }

    /// `T^m + α`.
    pub fn split_poly(&self) -> Poly {
        let mut coeffs = vec![self.field.zero(); self.m as usize + 1];
        coeffs[0] = self.alpha.clone();
        coeffs[self.m as usize] = self.field.one();
        Poly::raw(&self.field, coeffs)
    }

    /// `(b1, b2) = (T^m - α f + α, f)`.
    pub fn to_recursion(&self) -> Result<RecursionSpec, TowerError> {
        let deg_f = self.f.degree().unwrap_or(0);
        if deg_f >= self.m as usize {
            return Err(TowerError::Shape { deg_f, m: self.m });
        }
        let b1 = Poly::monomial(&self.field, self.field.one(), self.m as usize)?
            .sub_(&self.f.scale_(&self.alpha))
            .add_(&Poly::raw(&self.field, vec![self.alpha.clone()]));
        RecursionSpec::new(&self.field, self.m, b1, self.f.clone())
    }

    /// `σ_γ(T) = f(T)(γ^m + α) - (T^m + α)`, with γ in the target of `map`.
    pub fn sigma(&self, gamma: &FieldElement, map: &EmbeddingMap) -> Result<Poly, TowerError> {
        if map.source() != &self.field {
            return Err(TowerError::Mismatch);
        }
        let ctx = map.target();
        if !ctx.owns(gamma) {
            return Err(GfError::ContextMismatch.into());
        }
        let alpha = map.apply(&self.alpha)?;
        let f = self.f.lift(map)?;
        let gm = ctx.fpow(gamma, self.m as u128);
        let lhs = f.scale_(&ctx.fadd(&gm, &alpha));
        let mut rhs = vec![ctx.zero(); self.m as usize + 1];
        rhs[0] = alpha;
        rhs[self.m as usize] = ctx.one();
        Ok(lhs.sub_(&Poly::raw(ctx, rhs)))
    }

    /// The same spec viewed over an extension field.
    pub fn lift(&self, map: &EmbeddingMap) -> Result<KummerSpec, TowerError> {
        if map.source() != &self.field {
            return Err(TowerError::Mismatch);
        }
        KummerSpec::new(
            map.target(),
            self.m,
            map.apply(&self.alpha)?,
            self.f.lift(map)?,
        )
    }
}

/// `y^m = b1(x) / b2(x)` with `deg b1 = m` and `deg b2 < m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursionSpec {
    field: FieldCtx,
    m: u32,
    b1: Poly,
    b2: Poly,
}

impl RecursionSpec {
    /// Checks degrees only; coprimality and the gcd condition are reported by
    /// [`RecursionSpec::is_coprime`] and [`RecursionSpec::gcd_condition`].
    pub fn new(field: &FieldCtx, m: u32, b1: Poly, b2: Poly) -> Result<Self, TowerError> {
        if m < 2 {
            return Err(TowerError::Exponent(m));
        }
        if b1.ctx() != field || b2.ctx() != field {
            return Err(TowerError::Field(GfError::ContextMismatch));
        }
        if b1.degree() != Some(m as usize) {
            return Err(TowerError::NumeratorDegree {
                deg_b1: b1.degree(),
                m,
            });
        }
        if b2.is_zero() || b2.degree().unwrap() >= m as usize {
            return Err(TowerError::DenominatorDegree { m });
        }
        Ok(RecursionSpec {
            field: field.clone(),
            m,
            b1,
            b2,
        })
    }

    /// Like [`RecursionSpec::new`] but also enforces coprimality of `b1, b2`
    /// and `gcd(m, m - deg b2) = 1`.
    pub fn strict(field: &FieldCtx, m: u32, b1: Poly, b2: Poly) -> Result<Self, TowerError> {
        let rec = Self::new(field, m, b1, b2)?;
        if !rec.is_coprime() {
            return Err(TowerError::NotCoprime);
        }
        if !rec.gcd_condition() {
            return Err(TowerError::GcdCondition);
        }
        Ok(rec)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn b1(&self) -> &Poly {
        &self.b1
    }

    pub fn b2(&self) -> &Poly {
        &self.b2
    }

    pub fn is_coprime(&self) -> bool {
        self.b1.gcd_(&self.b2).is_one()
    }

    pub fn gcd_condition(&self) -> bool {
        let r = self.m as usize - self.b2.degree().unwrap();
        num_integer::gcd(self.m as usize, r) == 1
    }

    /// `σ_γ(T) = b2(T) γ^m - b1(T)`, with γ in the target of `map`.
    pub fn sigma(&self, gamma: &FieldElement, map: &EmbeddingMap) -> Result<Poly, TowerError> {
        if map.source() != &self.field {
            return Err(TowerError::Mismatch);
        }
        if !map.target().owns(gamma) {
            return Err(GfError::ContextMismatch.into());
        }
        let b1 = self.b1.lift(map)?;
        let b2 = self.b2.lift(map)?;
        Ok(sigma_lifted(&b1, &b2, gamma, self.m))
    }

    /// Every Kummer spec `(α, f)` whose induced recursion is exactly this one.
    pub fn kummer_forms(&self) -> Vec<KummerSpec> {
        let mut out = Vec::new();
        for alpha in self.field.elements().skip(1) {
            let Ok(spec) = KummerSpec::new(&self.field, self.m, alpha, self.b2.clone()) else {
                continue;
            };
            if spec.to_recursion().is_ok_and(|rec| rec.b1 == self.b1) {
                out.push(spec);
            }
        }
        out
    }
}

pub(crate) fn sigma_lifted(b1: &Poly, b2: &Poly, gamma: &FieldElement, m: u32) -> Poly {
    let ctx = b1.ctx();
    let gm = ctx.fpow(gamma, m as u128);
    b2.scale_(&gm).sub_(b1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_poly;

    fn gf9() -> FieldCtx {
        FieldCtx::extension(3, 2, Some(&[2, 2, 1])).unwrap()
    }

    fn spec(ctx: &FieldCtx, alpha: i64, f: &str) -> KummerSpec {
        KummerSpec::new(ctx, 2, ctx.constant(alpha), parse_poly(ctx, f).unwrap()).unwrap()
    }

    #[test]
    fn recursion_of_the_first_two_towers() {
        let f9 = gf9();
        let rec = spec(&f9, 1, "T").to_recursion().unwrap();
        assert_eq!(rec.b1(), &parse_poly(&f9, "T^2 - T + 1").unwrap());
        assert_eq!(rec.b2(), &parse_poly(&f9, "T").unwrap());
        let rec = spec(&f9, 1, "T+1").to_recursion().unwrap();
        assert_eq!(rec.b1(), &parse_poly(&f9, "T*(T-1)").unwrap());
        assert_eq!(rec.b2(), &parse_poly(&f9, "T+1").unwrap());
        assert!(rec.is_coprime() && rec.gcd_condition());
    }

    #[test]
    fn construction_errors() {
        let f9 = gf9();
        let t = Poly::x(&f9);
        assert_eq!(
            KummerSpec::new(&f9, 2, f9.zero(), t.clone()).unwrap_err(),
            TowerError::ZeroAlpha
        );
        assert_eq!(
            KummerSpec::new(&f9, 1, f9.one(), t.clone()).unwrap_err(),
            TowerError::Exponent(1)
        );
        let wide = spec(&f9, 1, "T^2 + 1");
        assert_eq!(
            wide.to_recursion().unwrap_err(),
            TowerError::Shape { deg_f: 2, m: 2 }
        );
        let b1 = parse_poly(&f9, "T^2 - 1").unwrap();
        let b2 = parse_poly(&f9, "T - 1").unwrap();
        assert_eq!(
            RecursionSpec::strict(&f9, 2, b1.clone(), b2.clone()).unwrap_err(),
            TowerError::NotCoprime
        );
        assert!(!RecursionSpec::new(&f9, 2, b1, b2).unwrap().is_coprime());
    }

    #[test]
    fn sigma_examples() {
        let f9 = gf9();
        let s = spec(&f9, 1, "T");
        let id = EmbeddingMap::identity(&f9);
        // σ_0 = T - T^2 - 1 = -(T - 2)^2
        let s0 = s.sigma(&f9.zero(), &id).unwrap();
        assert_eq!(s0, parse_poly(&f9, "-T^2 + T - 1").unwrap());
        assert_eq!(s0.neg(), parse_poly(&f9, "(T-2)^2").unwrap());
        // σ_1 = 2T - T^2 - 1 = -(T - 1)^2
        let s1 = s.sigma(&f9.one(), &id).unwrap();
        assert_eq!(s1, parse_poly(&f9, "-T^2 + 2*T - 1").unwrap());
        assert_eq!(s1.neg(), parse_poly(&f9, "(T-1)^2").unwrap());
    }

    #[test]
    fn both_sigma_forms_agree() {
        let f9 = gf9();
        let id = EmbeddingMap::identity(&f9);
        for f in ["T", "T+1", "(d+2)*T", "2*d*T + d"] {
            let s = spec(&f9, 2, f);
            let rec = s.to_recursion().unwrap();
            for g in f9.elements() {
                assert_eq!(s.sigma(&g, &id).unwrap(), rec.sigma(&g, &id).unwrap());
                assert_eq!(s.sigma(&g, &id).unwrap().degree(), Some(2));
            }
        }
    }

    #[test]
    fn kummer_form_recovery() {
        let f25 = FieldCtx::extension(5, 2, Some(&[2, 4, 1])).unwrap();
        let b1 = parse_poly(&f25, "T^2 - (d+2)*T").unwrap();
        let b2 = parse_poly(&f25, "(d+2)*T + 1").unwrap();
        let rec = RecursionSpec::strict(&f25, 2, b1, b2).unwrap();
        let forms = rec.kummer_forms();
        assert_eq!(forms.len(), 1);
        assert!(forms[0].alpha().is_one());
    }
}
