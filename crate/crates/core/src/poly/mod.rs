//! Dense univariate polynomials over a [`FieldCtx`].

mod roots;

use std::fmt;

use crate::gf::{EmbeddingMap, FieldCtx, FieldElement, GfError};

pub use roots::{
    all_roots, distinct_roots_in, factor_degree_profile, squarefree_decomposition, DegreeBudget,
    RootSet,
};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("polynomials belong to different fields")]
    ContextMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("operation needs a nonconstant polynomial")]
    Constant,
    #[error("roots need an extension of degree {required} over GF(p), budget is {budget}")]
    BudgetExceeded { required: usize, budget: usize },
}

/// Ascending coefficients, leading coefficient nonzero; the zero polynomial
/// has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ctx: FieldCtx,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(ctx: &FieldCtx, coeffs: Vec<FieldElement>) -> Result<Self, PolyError> {
        if coeffs.iter().any(|c| !ctx.owns(c)) {
            return Err(PolyError::ContextMismatch);
        }
        Ok(Self::raw(ctx, coeffs))
    }

    pub(crate) fn raw(ctx: &FieldCtx, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn zero(ctx: &FieldCtx) -> Self {
        Self::raw(ctx, Vec::new())
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        Self::raw(ctx, vec![ctx.one()])
    }

    pub fn constant(ctx: &FieldCtx, c: FieldElement) -> Result<Self, PolyError> {
        Self::new(ctx, vec![c])
    }

    /// `c * T^k`.
    pub fn monomial(ctx: &FieldCtx, c: FieldElement, k: usize) -> Result<Self, PolyError> {
        let mut coeffs = vec![ctx.zero(); k];
        coeffs.push(c);
        Self::new(ctx, coeffs)
    }

    /// The variable `T`.
    pub fn x(ctx: &FieldCtx) -> Self {
        Self::raw(ctx, vec![ctx.zero(), ctx.one()])
    }

    /// Polynomial with prime-field coefficients given as residues.
    pub fn from_residues(ctx: &FieldCtx, residues: &[i64]) -> Self {
        Self::raw(ctx, residues.iter().map(|&r| ctx.constant(r)).collect())
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    fn same(&self, other: &Poly) -> Result<(), PolyError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same(other)?;
        Ok(self.add_(other))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same(other)?;
        Ok(self.add_(&other.neg()))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same(other)?;
        Ok(self.mul_(other))
    }

    pub fn neg(&self) -> Poly {
        Self::raw(
            &self.ctx,
            self.coeffs.iter().map(|c| self.ctx.fneg(c)).collect(),
        )
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Poly, PolyError> {
        if !self.ctx.owns(c) {
            return Err(PolyError::ContextMismatch);
        }
        Ok(self.scale_(c))
    }

    /// `T ↦ g(cT)`: the k-th coefficient is multiplied by `c^k`.
    pub fn compose_linear(&self, c: &FieldElement) -> Result<Poly, PolyError> {
        if !self.ctx.owns(c) {
            return Err(PolyError::ContextMismatch);
        }
        let mut power = self.ctx.one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(self.ctx.fmul(a, &power));
            power = self.ctx.fmul(&power, c);
        }
        Ok(Self::raw(&self.ctx, out))
    }

    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement, PolyError> {
        if !self.ctx.owns(x) {
            return Err(PolyError::ContextMismatch);
        }
        Ok(self.eval_(x))
    }

    pub fn derivative(&self) -> Poly {
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| {
                self.ctx
                    .scalar_mul((k as u64 % self.ctx.p() as u64) as u32, c)
            })
            .collect();
        Self::raw(&self.ctx, out)
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = self.ctx.finv(lc).expect("leading coefficient is nonzero");
                self.scale_(&inv)
            }
        }
    }

    /// `(q, r)` with `self = q * divisor + r` and `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        self.same(divisor)?;
        self.divmod_(divisor)
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly, PolyError> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Monic gcd by Euclid.
    pub fn gcd(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::ZeroGcd);
        }
        Ok(self.gcd_(other))
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn powmod(&self, mut e: u128, modulus: &Poly) -> Result<Poly, PolyError> {
        self.same(modulus)?;
        if modulus.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let mut base = self.divmod_(modulus)?.1;
        let mut acc = Poly::one(&self.ctx).divmod_(modulus)?.1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_(&base).divmod_(modulus)?.1;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_(&base).divmod_(modulus)?.1;
            }
        }
        Ok(acc)
    }

    /// Whether `gcd(self, self') = 1`.
    pub fn is_separable(&self) -> Result<bool, PolyError> {
        if self.is_constant() {
            return Err(PolyError::Constant);
        }
        Ok(self.gcd_(&self.derivative()).is_one())
    }

    /// Pushes every coefficient through a field embedding.
    pub fn lift(&self, map: &EmbeddingMap) -> Result<Poly, PolyError> {
        if map.source() != &self.ctx {
            return Err(PolyError::ContextMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| map.apply(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::raw(map.target(), coeffs))
    }

    pub(crate) fn add_(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => self.ctx.fadd(a, b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::raw(&self.ctx, out)
    }

    pub(crate) fn sub_(&self, other: &Poly) -> Poly {
        self.add_(&other.neg())
    }

    pub(crate) fn mul_(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let mut out = vec![self.ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = self.ctx.fmul(a, b);
                out[i + j] = self.ctx.fadd(&out[i + j], &t);
            }
        }
        Self::raw(&self.ctx, out)
    }

    pub(crate) fn scale_(&self, c: &FieldElement) -> Poly {
        Self::raw(
            &self.ctx,
            self.coeffs.iter().map(|a| self.ctx.fmul(a, c)).collect(),
        )
    }

    pub(crate) fn eval_(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.ctx.fadd(&self.ctx.fmul(&acc, x), c);
        }
        acc
    }

    pub(crate) fn divmod_(&self, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        let Some(dlead) = divisor.leading() else {
            return Err(PolyError::DivisionByZero);
        };
        let ddeg = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= ddeg {
            return Ok((Poly::zero(&self.ctx), self.clone()));
        }
        let inv = if dlead.is_one() {
            dlead.clone()
        } else {
            self.ctx.finv(dlead)?
        };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.ctx.zero(); rem.len() - ddeg];
        for top in (ddeg..rem.len()).rev() {
            if rem[top].is_zero() {
                continue;
            }
            let factor = self.ctx.fmul(&rem[top], &inv);
            let shift = top - ddeg;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = self.ctx.fmul(&factor, d);
                rem[shift + j] = self.ctx.fsub(&rem[shift + j], &t);
            }
            quot[shift] = factor;
        }
        rem.truncate(ddeg);
        Ok((Self::raw(&self.ctx, quot), Self::raw(&self.ctx, rem)))
    }

    pub(crate) fn gcd_(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divmod_(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact quotient; caller guarantees divisibility.
    pub(crate) fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divmod_(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero());
        q
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Text form, highest power first: `(d+2)*T + 1`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let text = c.to_string();
            let wrapped = if text.contains('+') {
                format!("({text})")
            } else {
                text
            };
            match k {
                0 => f.write_str(&wrapped)?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{wrapped}*")?;
                    }
                    if k == 1 {
                        f.write_str("T")?;
                    } else {
                        write!(f, "T^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf9() -> FieldCtx {
        FieldCtx::extension(3, 2, Some(&[2, 2, 1])).unwrap()
    }

    #[test]
    fn compose_linear_examples() {
        let f9 = gf9();
        let d = f9.generator();
        let t = Poly::x(&f9);
        assert_eq!(
            t.compose_linear(&d).unwrap(),
            Poly::monomial(&f9, d.clone(), 1).unwrap()
        );
        let f = Poly::from_residues(&f9, &[1, 1]);
        assert_eq!(f.compose_linear(&f9.one()).unwrap(), f);
        let expect = Poly::new(&f9, vec![f9.one(), d.clone()]).unwrap();
        assert_eq!(f.compose_linear(&d).unwrap(), expect);
    }

    #[test]
    fn divmod_examples() {
        let f3 = FieldCtx::prime(3).unwrap();
        let a = Poly::from_residues(&f3, &[1, 0, 1]);
        let (q, r) = a.divmod(&Poly::x(&f3)).unwrap();
        assert_eq!(q, Poly::x(&f3));
        assert_eq!(r, Poly::one(&f3));
        let (q, r) = a.divmod(&a).unwrap();
        assert!(q.is_one() && r.is_zero());
        assert_eq!(
            a.divmod(&Poly::zero(&f3)).unwrap_err(),
            PolyError::DivisionByZero
        );
    }

    #[test]
    fn gcd_examples() {
        let f25 = FieldCtx::extension(5, 2, Some(&[2, 4, 1])).unwrap();
        let a = Poly::from_residues(&f25, &[-1, 0, 1]);
        let b = Poly::from_residues(&f25, &[-1, 1]);
        let g = a.gcd(&b).unwrap();
        assert_eq!(g, Poly::from_residues(&f25, &[4, 1]));
        assert_eq!(g.to_string(), "T + 4");
        let c = Poly::from_residues(&f25, &[0, 3]);
        assert_eq!(c.gcd(&Poly::zero(&f25)).unwrap(), Poly::x(&f25));
        assert!(Poly::x(&f25).gcd(&b).unwrap().is_one());
        assert_eq!(
            Poly::zero(&f25).gcd(&Poly::zero(&f25)).unwrap_err(),
            PolyError::ZeroGcd
        );
    }

    #[test]
    fn separability() {
        let f9 = gf9();
        assert!(Poly::x(&f9).is_separable().unwrap());
        // T^2 - T + 1 = (T - 2)^2 in characteristic 3
        assert!(!Poly::from_residues(&f9, &[1, -1, 1])
            .is_separable()
            .unwrap());
        assert!(Poly::from_residues(&f9, &[0, -1, 1])
            .is_separable()
            .unwrap());
        assert_eq!(
            Poly::one(&f9).is_separable().unwrap_err(),
            PolyError::Constant
        );
    }

    #[test]
    fn display_text_form() {
        let f25 = FieldCtx::extension(5, 2, Some(&[2, 4, 1])).unwrap();
        let d = f25.generator();
        let c = f25.add(&d, &f25.constant(2)).unwrap();
        let p = Poly::new(&f25, vec![f25.one(), c]).unwrap();
        assert_eq!(p.to_string(), "(d+2)*T + 1");
        assert_eq!(Poly::from_residues(&f25, &[0, 0, 1]).to_string(), "T^2");
    }
}
