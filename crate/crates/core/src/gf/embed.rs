use super::{FieldCtx, FieldElement, GfError};
use crate::poly::{distinct_roots_in, Poly};

/// A ring embedding GF(p^a) → GF(p^b), fixed by the image of the source
/// generator.
#[derive(Debug, Clone)]
pub struct EmbeddingMap {
    source: FieldCtx,
    target: FieldCtx,
    image: FieldElement,
    powers: Vec<FieldElement>,
}

impl PartialEq for EmbeddingMap {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.image == other.image
    }
}

impl Eq for EmbeddingMap {}

impl EmbeddingMap {
    pub fn identity(ctx: &FieldCtx) -> Self {
        Self::build(ctx, ctx, ctx.generator())
    }

    fn build(source: &FieldCtx, target: &FieldCtx, image: FieldElement) -> Self {
        let mut powers = Vec::with_capacity(source.s());
        let mut acc = target.one();
        for _ in 0..source.s() {
            powers.push(acc.clone());
            acc = target.fmul(&acc, &image);
        }
        EmbeddingMap {
            source: source.clone(),
            target: target.clone(),
            image,
            powers,
        }
    }

    fn compatible(source: &FieldCtx, target: &FieldCtx) -> Result<(), GfError> {
        if source.p() != target.p() || !target.s().is_multiple_of(source.s()) {
            return Err(GfError::NoEmbedding {
                from_p: source.p(),
                from_s: source.s(),
                to_p: target.p(),
                to_s: target.s(),
            });
        }
        Ok(())
    }

    /// Checks that `image` is a root of the source modulus in `target`.
    pub fn from_image(
        source: &FieldCtx,
        target: &FieldCtx,
        image: FieldElement,
    ) -> Result<Self, GfError> {
        Self::compatible(source, target)?;
        if !target.owns(&image) {
            return Err(GfError::ContextMismatch);
        }
        let modulus = Poly::raw(
            target,
            source
                .modulus()
                .iter()
                .map(|&c| target.constant(c as i64))
                .collect(),
        );
        if !modulus.eval_(&image).is_zero() {
            return Err(GfError::InconsistentEmbedding);
        }
        Ok(Self::build(source, target, image))
    }

    /// The embedding sending the source generator to the smallest root of the
    /// source modulus in `target`.
    pub fn find(source: &FieldCtx, target: &FieldCtx) -> Result<Self, GfError> {
        Self::compatible(source, target)?;
        if source == target {
            return Ok(Self::identity(source));
        }
        let modulus = Poly::raw(
            target,
            source
                .modulus()
                .iter()
                .map(|&c| target.constant(c as i64))
                .collect(),
        );
        let roots = distinct_roots_in(&modulus, &EmbeddingMap::identity(target))
            .map_err(|_| GfError::InconsistentEmbedding)?;
        let image = roots
            .into_iter()
            .next()
            .ok_or(GfError::InconsistentEmbedding)?;
        Ok(Self::build(source, target, image))
    }

    pub fn source(&self) -> &FieldCtx {
        &self.source
    }

    pub fn target(&self) -> &FieldCtx {
        &self.target
    }

    pub fn image(&self) -> &FieldElement {
        &self.image
    }

    pub fn apply(&self, a: &FieldElement) -> Result<FieldElement, GfError> {
        if !self.source.owns(a) {
            return Err(GfError::ContextMismatch);
        }
        if self.source == self.target {
            return Ok(a.clone());
        }
        let mut acc = self.target.zero();
        for (&c, power) in a.coeffs().iter().zip(&self.powers) {
            if c != 0 {
                acc = self.target.fadd(&acc, &self.target.scalar_mul(c, power));
            }
        }
        Ok(acc)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &EmbeddingMap) -> Result<EmbeddingMap, GfError> {
        if next.source != self.target {
            return Err(GfError::ContextMismatch);
        }
        let image = next.apply(&self.image)?;
        Ok(Self::build(&self.source, &next.target, image))
    }
}
