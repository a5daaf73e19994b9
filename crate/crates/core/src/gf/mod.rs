//! Prime fields GF(p) and extensions GF(p^s), represented as polynomials in a
//! single generator `d` modulo a monic irreducible of degree `s` over GF(p).

mod cache;
mod embed;
mod irreducible;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

pub use cache::{default_field, embedding_between};
pub use embed::EmbeddingMap;
pub use irreducible::{is_irreducible, smallest_factor_degree};

pub(crate) type Coeffs = SmallVec<[u32; 16]>;

/// Characteristics must stay below this so residue arithmetic fits in a `u64`.
pub const MAX_CHARACTERISTIC: u32 = 1 << 31;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {p}^{s} is too large to represent")]
    TooLarge { p: u32, s: usize },
    #[error("modulus must be monic of degree {expected}, got {got:?}")]
    BadModulus { expected: usize, got: Vec<u32> },
    #[error("modulus is reducible: it has an irreducible factor of degree {factor_degree}")]
    Reducible { factor_degree: usize },
    #[error("operands belong to different fields")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficient {value} is not a residue modulo {p}")]
    BadCoefficient { value: u64, p: u32 },
    #[error("element has {len} coefficients but the field has degree {s}")]
    TooManyCoefficients { len: usize, s: usize },
    #[error("{d} does not divide the extension degree {s}")]
    NotASubfield { d: usize, s: usize },
    #[error("cannot embed GF({from_p}^{from_s}) into GF({to_p}^{to_s})")]
    NoEmbedding {
        from_p: u32,
        from_s: usize,
        to_p: u32,
        to_s: usize,
    },
    #[error("embedding image is not a root of the source modulus")]
    InconsistentEmbedding,
}

/// Stable identity of a field representation, derived from `(p, s, modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldLabel(u64);

impl FieldLabel {
    fn of(p: u32, s: usize, modulus: &[u32]) -> Self {
        // FNV-1a
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        feed(p as u64);
        feed(s as u64);
        for &c in modulus {
            feed(c as u64);
        }
        FieldLabel(h)
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

/// JSON descriptor of a field: `{"p":3,"s":4,"modulus":[2,0,0,2,1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub s: usize,
    pub modulus: Vec<u32>,
}

impl FieldDescriptor {
    pub fn build(&self) -> Result<FieldCtx, GfError> {
        FieldCtx::extension(self.p, self.s, Some(&self.modulus))
    }
}

struct Inner {
    p: u32,
    s: usize,
    modulus: Vec<u32>,
    label: FieldLabel,
    order: u128,
}

/// A concrete model of GF(p^s). Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<Inner>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.inner.label == other.inner.label
    }
}

impl Eq for FieldCtx {}

impl std::hash::Hash for FieldCtx {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inner.label.hash(state);
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.p(), self.s(), self.modulus())
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s() == 1 {
            write!(f, "GF({})", self.p())
        } else {
            write!(
                f,
                "GF({}^{}) mod {}",
                self.p(),
                self.s(),
                modulus_text(self.modulus())
            )
        }
    }
}

fn modulus_text(modulus: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in modulus.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "d".to_string(),
            _ => format!("d^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    terms.join("+")
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 || n >= MAX_CHARACTERISTIC as u64 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn checked_order(p: u32, s: usize) -> Result<u128, GfError> {
    let mut order: u128 = 1;
    for _ in 0..s {
        order = order
            .checked_mul(p as u128)
            .filter(|o| *o < (1u128 << 100))
            .ok_or(GfError::TooLarge { p, s })?;
    }
    Ok(order)
}

impl FieldCtx {
    fn from_parts(p: u32, s: usize, modulus: Vec<u32>) -> Result<Self, GfError> {
        let order = checked_order(p, s)?;
        let label = FieldLabel::of(p, s, &modulus);
        Ok(FieldCtx {
            inner: Arc::new(Inner {
                p,
                s,
                modulus,
                label,
                order,
            }),
        })
    }

    /// GF(p), with the placeholder modulus `T`.
    pub fn prime(p: u32) -> Result<Self, GfError> {
        if !is_prime(p as u64) {
            return Err(GfError::NotPrime(p as u64));
        }
        Self::from_parts(p, 1, vec![0, 1])
    }

    /// GF(p^s). A supplied modulus is verified monic and irreducible; an absent
    /// one is replaced by the smallest monic irreducible in canonical order.
    pub fn extension(p: u32, s: usize, modulus: Option<&[u32]>) -> Result<Self, GfError> {
        if !is_prime(p as u64) {
            return Err(GfError::NotPrime(p as u64));
        }
        if s == 0 {
            return Err(GfError::ZeroDegree);
        }
        checked_order(p, s)?;
        let Some(modulus) = modulus else {
            return default_field(p, s);
        };
        if modulus.len() != s + 1 || modulus[s] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(GfError::BadModulus {
                expected: s,
                got: modulus.to_vec(),
            });
        }
        if s > 1 && !is_irreducible(p, modulus)? {
            let factor_degree = smallest_factor_degree(p, modulus)?;
            return Err(GfError::Reducible { factor_degree });
        }
        Self::from_parts(p, s, modulus.to_vec())
    }

    /// Builds a context from a modulus already known to be irreducible.
    pub(crate) fn trusted(p: u32, s: usize, modulus: Vec<u32>) -> Result<Self, GfError> {
        Self::from_parts(p, s, modulus)
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    /// Degree over GF(p).
    pub fn s(&self) -> usize {
        self.inner.s
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn label(&self) -> FieldLabel {
        self.inner.label
    }

    /// Number of elements, p^s.
    pub fn order(&self) -> u128 {
        self.inner.order
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p(),
            s: self.s(),
            modulus: self.modulus().to_vec(),
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: Coeffs::new(),
            label: self.label(),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.constant(1)
    }

    /// The residue class of an integer, i.e. the image of GF(p).
    pub fn constant(&self, c: i64) -> FieldElement {
        let r = c.rem_euclid(self.p() as i64) as u32;
        self.raw(Coeffs::from_slice(&[r]))
    }

    /// The class of `d`. In a prime field this is the root of the placeholder
    /// modulus.
    pub fn generator(&self) -> FieldElement {
        if self.s() == 1 {
            let m = &self.inner.modulus;
            return self.constant(-(m[0] as i64));
        }
        self.raw(Coeffs::from_slice(&[0, 1]))
    }

    /// Element from ascending coefficients. Rejects out-of-range residues and
    /// over-long lists so that parsing is exact.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement, GfError> {
        let p = self.p();
        let mut out = Coeffs::with_capacity(coeffs.len());
        for &c in coeffs {
            if c >= p as u64 {
                return Err(GfError::BadCoefficient { value: c, p });
            }
            out.push(c as u32);
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        if out.len() > self.s() {
            return Err(GfError::TooManyCoefficients {
                len: out.len(),
                s: self.s(),
            });
        }
        Ok(FieldElement {
            coeffs: out,
            label: self.label(),
        })
    }

    fn raw(&self, mut coeffs: Coeffs) -> FieldElement {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FieldElement {
            coeffs,
            label: self.label(),
        }
    }

    pub fn owns(&self, a: &FieldElement) -> bool {
        a.label == self.label()
    }

    fn check(&self, a: &FieldElement) -> Result<(), GfError> {
        if self.owns(a) {
            Ok(())
        } else {
            Err(GfError::ContextMismatch)
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, GfError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.fadd(a, b))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, GfError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.fsub(a, b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, GfError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.fmul(a, b))
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement, GfError> {
        self.check(a)?;
        Ok(self.fneg(a))
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, GfError> {
        self.check(a)?;
        self.finv(a)
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, GfError> {
        self.check(a)?;
        let binv = self.inv(b)?;
        Ok(self.fmul(a, &binv))
    }

    /// `a^n`; negative exponents invert first.
    pub fn pow(&self, a: &FieldElement, n: i128) -> Result<FieldElement, GfError> {
        self.check(a)?;
        if n >= 0 {
            Ok(self.fpow(a, n as u128))
        } else {
            let ainv = self.finv(a)?;
            Ok(self.fpow(&ainv, n.unsigned_abs()))
        }
    }

    /// The absolute Frobenius `a ↦ a^p`.
    pub fn frobenius(&self, a: &FieldElement) -> Result<FieldElement, GfError> {
        self.pow(a, self.p() as i128)
    }

    /// Whether `a` is a square. Every element is a square when p = 2.
    pub fn is_square(&self, a: &FieldElement) -> Result<bool, GfError> {
        self.check(a)?;
        Ok(self.fis_square(a))
    }

    /// A square root of `a` (Tonelli-Shanks), or `None` for a non-square.
    /// Which of the two roots is returned is deterministic but unspecified.
    pub fn sqrt(&self, a: &FieldElement) -> Result<Option<FieldElement>, GfError> {
        self.check(a)?;
        Ok(self.fsqrt(a))
    }

    pub(crate) fn fis_square(&self, a: &FieldElement) -> bool {
        self.p() == 2 || a.is_zero() || self.fpow(a, (self.order() - 1) / 2).is_one()
    }

    pub(crate) fn fsqrt(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return Some(a.clone());
        }
        if self.p() == 2 {
            // squaring is a bijection; its inverse is a^(q/2)
            return Some(self.fpow(a, self.order() / 2));
        }
        if !self.fis_square(a) {
            return None;
        }
        let mut t = self.order() - 1;
        let mut e = 0u32;
        while t.is_multiple_of(2) {
            t /= 2;
            e += 1;
        }
        let z = self
            .elements()
            .skip(1)
            .find(|z| !self.fis_square(z))
            .expect("odd q has non-squares");
        let mut c = self.fpow(&z, t);
        let mut x = self.fpow(a, t.div_ceil(2));
        let mut b = self.fpow(a, t);
        let mut r = e;
        while !b.is_one() {
            let mut i = 0;
            let mut probe = b.clone();
            while !probe.is_one() {
                probe = self.fmul(&probe, &probe);
                i += 1;
            }
            let g = self.fpow(&c, 1u128 << (r - i - 1));
            x = self.fmul(&x, &g);
            c = self.fmul(&g, &g);
            b = self.fmul(&b, &c);
            r = i;
        }
        Some(x)
    }

    /// Whether `a` lies in the subfield of size p^d.
    pub fn in_subfield(&self, a: &FieldElement, d: usize) -> Result<bool, GfError> {
        self.check(a)?;
        if d == 0 || !self.s().is_multiple_of(d) {
            return Err(GfError::NotASubfield { d, s: self.s() });
        }
        let q = (self.p() as u128).pow(d as u32);
        Ok(self.fpow(a, q) == *a)
    }

    /// All elements, in canonical order.
    pub fn elements(&self) -> Elements {
        Elements {
            ctx: self.clone(),
            index: 0,
        }
    }

    /// Element at position `index` of the canonical enumeration.
    pub fn element_at(&self, mut index: u128) -> Option<FieldElement> {
        if index >= self.order() {
            return None;
        }
        if index == 0 {
            return Some(self.zero());
        }
        index -= 1;
        let p = self.p() as u128;
        // Block of length-`len` lists holds (p-1) * p^(len-1) entries.
        let mut len = 1usize;
        let mut block = p - 1;
        while index >= block {
            index -= block;
            len += 1;
            block *= p;
        }
        // Within a block, lists are lexicographic with the constant term most
        // significant and a nonzero last entry.
        let mut coeffs = Coeffs::from_elem(0, len);
        let lead_span = p - 1;
        let lower = index / lead_span;
        let lead = index % lead_span;
        let mut rest = lower;
        let mut digits = Vec::with_capacity(len - 1);
        for _ in 0..len - 1 {
            digits.push((rest % p) as u32);
            rest /= p;
        }
        digits.reverse();
        for (i, d) in digits.into_iter().enumerate() {
            coeffs[i] = d;
        }
        coeffs[len - 1] = lead as u32 + 1;
        Some(self.raw(coeffs))
    }

    // Unchecked arithmetic used inside the crate once operands are known to
    // share this context.

    pub(crate) fn fadd(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        debug_assert!(self.owns(a) && self.owns(b));
        let p = self.p() as u64;
        let n = a.coeffs.len().max(b.coeffs.len());
        let mut out = Coeffs::with_capacity(n);
        for i in 0..n {
            let x = *a.coeffs.get(i).unwrap_or(&0) as u64 + *b.coeffs.get(i).unwrap_or(&0) as u64;
            out.push((x % p) as u32);
        }
        self.raw(out)
    }

    pub(crate) fn fneg(&self, a: &FieldElement) -> FieldElement {
        let p = self.p();
        let out = a
            .coeffs
            .iter()
            .map(|&c| if c == 0 { 0 } else { p - c })
            .collect();
        self.raw(out)
    }

    pub(crate) fn fsub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.fadd(a, &self.fneg(b))
    }

    pub(crate) fn fmul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        debug_assert!(self.owns(a) && self.owns(b));
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return self.zero();
        }
        let p = self.p() as u64;
        let s = self.s();
        let len = a.coeffs.len() + b.coeffs.len() - 1;
        if p < 1 << 16 && len <= 64 {
            // every product is below 2^32, so sums of a few thousand terms
            // fit in u64 and reduction can wait
            let mut arr = [0u64; 64];
            let buf = &mut arr[..len];
            let (xs, ys) = (&a.coeffs[..], &b.coeffs[..]);
            for (i, &x) in xs.iter().enumerate() {
                let row = &mut buf[i..i + ys.len()];
                for (slot, &y) in row.iter_mut().zip(ys) {
                    *slot += x as u64 * y as u64;
                }
            }
            let modulus = &self.inner.modulus[..s];
            for top in (s..len).rev() {
                let c = buf[top] % p;
                if c == 0 {
                    continue;
                }
                let shift = top - s;
                for (slot, &mj) in buf[shift..shift + s].iter_mut().zip(modulus) {
                    *slot += (p - c) * mj as u64;
                }
            }
            return self.raw(buf[..s.min(len)].iter().map(|x| (x % p) as u32).collect());
        }
        let mut buf: SmallVec<[u64; 32]> = SmallVec::from_elem(0, len);
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                buf[i + j] = (buf[i + j] + x as u64 * y as u64) % p;
            }
        }
        let modulus = &self.inner.modulus;
        for top in (s..buf.len()).rev() {
            let c = buf[top] % p;
            if c == 0 {
                continue;
            }
            buf[top] = 0;
            let shift = top - s;
            for (j, &mj) in modulus[..s].iter().enumerate() {
                if mj != 0 {
                    buf[shift + j] = (buf[shift + j] + (p - c) * mj as u64) % p;
                }
            }
        }
        buf.truncate(s.min(buf.len()));
        self.raw(buf.into_iter().map(|x| (x % p) as u32).collect())
    }

    pub(crate) fn fpow(&self, a: &FieldElement, mut n: u128) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.fmul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.fmul(&base, &base);
            }
        }
        acc
    }

    pub(crate) fn finv(&self, a: &FieldElement) -> Result<FieldElement, GfError> {
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        if a.is_one() {
            return Ok(a.clone());
        }
        let p = self.p() as u64;
        // extended Euclid on (modulus, a) over GF(p)[x], tracking the
        // cofactor of a
        let trim = |v: &mut Vec<u64>| {
            while v.last() == Some(&0) {
                v.pop();
            }
        };
        let mut r0: Vec<u64> = self.inner.modulus.iter().map(|&c| c as u64).collect();
        let mut r1: Vec<u64> = a.coeffs.iter().map(|&c| c as u64).collect();
        let (mut t0, mut t1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while r1.len() > 1 {
            let lead_inv = inverse_mod(r1[r1.len() - 1], p);
            let mut quot = vec![0u64; r0.len() - r1.len() + 1];
            while r0.len() >= r1.len() {
                let c = r0[r0.len() - 1] * lead_inv % p;
                let shift = r0.len() - r1.len();
                quot[shift] = c;
                for (j, &d) in r1.iter().enumerate() {
                    r0[shift + j] = (r0[shift + j] + (p - c) * d % p) % p;
                }
                trim(&mut r0);
            }
            // t0 - quot * t1
            let mut next = t0.clone();
            next.resize(next.len().max(quot.len() + t1.len() - 1), 0);
            for (i, &qc) in quot.iter().enumerate() {
                for (j, &tc) in t1.iter().enumerate() {
                    next[i + j] = (next[i + j] + (p - qc) * tc % p) % p;
                }
            }
            trim(&mut next);
            (r0, r1) = (r1, r0);
            (t0, t1) = (t1, next);
        }
        let c = inverse_mod(r1[0], p);
        Ok(self.raw(t1.iter().map(|&x| (x * c % p) as u32).collect()))
    }

    pub(crate) fn scalar_mul(&self, c: u32, a: &FieldElement) -> FieldElement {
        let p = self.p() as u64;
        self.raw(
            a.coeffs
                .iter()
                .map(|&x| ((x as u64 * c as u64) % p) as u32)
                .collect(),
        )
    }
}

/// Inverse of a nonzero residue modulo the prime `p`.
fn inverse_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u64
}

/// Iterator over every element of a field in canonical order.
pub struct Elements {
    ctx: FieldCtx,
    index: u128,
}

impl Iterator for Elements {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        let e = self.ctx.element_at(self.index)?;
        self.index += 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.ctx.order().saturating_sub(self.index);
        let n = usize::try_from(left).unwrap_or(usize::MAX);
        (n, usize::try_from(left).ok())
    }
}

/// An element of some [`FieldCtx`]: ascending coefficients in `d` with
/// trailing zeros stripped.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Coeffs,
    label: FieldLabel,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn label(&self) -> FieldLabel {
        self.label
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.as_slice() == [1]
    }

    /// Constant term when the element lies in the prime field.
    pub fn as_prime(&self) -> Option<u32> {
        match self.coeffs.len() {
            0 => Some(0),
            1 => Some(self.coeffs[0]),
            _ => None,
        }
    }
}

/// Canonical order: shorter coefficient lists first, then lexicographic with
/// the constant term most significant.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
            .then_with(|| self.label.cmp(&other.label))
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Polynomial-in-`d` notation, highest power first: `2*d^3+2*d^2+1`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&modulus_text(&self.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf9() -> FieldCtx {
        FieldCtx::extension(3, 2, Some(&[2, 2, 1])).unwrap()
    }

    fn el(ctx: &FieldCtx, c: &[u64]) -> FieldElement {
        ctx.element(c).unwrap()
    }

    #[test]
    fn prime_fields() {
        assert_eq!(FieldCtx::prime(3).unwrap().order(), 3);
        assert_eq!(FieldCtx::prime(5).unwrap().modulus(), &[0, 1]);
        assert_eq!(FieldCtx::prime(4).unwrap_err(), GfError::NotPrime(4));
        assert_eq!(FieldCtx::prime(1).unwrap_err(), GfError::NotPrime(1));
    }

    #[test]
    fn named_extensions() {
        let f9 = gf9();
        assert_eq!(f9.order(), 9);
        let f25 = FieldCtx::extension(5, 2, Some(&[2, 4, 1])).unwrap();
        assert_eq!(f25.order(), 25);
        let f81 = FieldCtx::extension(3, 4, Some(&[2, 0, 0, 2, 1])).unwrap();
        assert_eq!(f81.order(), 81);
        assert_ne!(f9.label(), f25.label());
    }

    #[test]
    fn reducible_modulus_names_factor_degree() {
        // T^2 + 2 = (T+1)(T+2) over GF(3)
        let err = FieldCtx::extension(3, 2, Some(&[2, 0, 1])).unwrap_err();
        assert_eq!(err, GfError::Reducible { factor_degree: 1 });
        // (T^2+1)^2 over GF(3)
        let err = FieldCtx::extension(3, 4, Some(&[1, 0, 2, 0, 1])).unwrap_err();
        assert_eq!(err, GfError::Reducible { factor_degree: 2 });
        assert!(matches!(
            FieldCtx::extension(3, 2, Some(&[2, 2, 2])),
            Err(GfError::BadModulus { .. })
        ));
    }

    #[test]
    fn hand_reductions_in_gf9() {
        let f9 = gf9();
        // d^2 = d + 1 since d^2 + 2d + 2 = 0
        let d = f9.generator();
        assert_eq!(f9.pow(&d, 2).unwrap(), el(&f9, &[1, 1]));
        // (d+2)(d+1) = d^2 + 3d + 2 = d^2 + 2 = (d + 1) + 2 = d
        assert_eq!(f9.mul(&el(&f9, &[2, 1]), &el(&f9, &[1, 1])).unwrap(), d);
        // (2d+2)(d+1) = 2d^2 + 4d + 2 = 2(d+1) + d + 2 = 3d + 4 = 1
        assert!(f9
            .mul(&el(&f9, &[2, 2]), &el(&f9, &[1, 1]))
            .unwrap()
            .is_one());
        assert_eq!(f9.inv(&el(&f9, &[2, 2])).unwrap(), el(&f9, &[1, 1]));
        assert!(f9.pow(&d, 8).unwrap().is_one());
        assert!(f9.inv(&f9.one()).unwrap().is_one());
        assert_eq!(f9.inv(&f9.zero()).unwrap_err(), GfError::DivisionByZero);
        assert_eq!(f9.pow(&f9.zero(), -1).unwrap_err(), GfError::DivisionByZero);
    }

    #[test]
    fn identities() {
        let f9 = gf9();
        for a in f9.elements() {
            assert_eq!(f9.add(&a, &f9.zero()).unwrap(), a);
            assert!(f9.add(&a, &f9.neg(&a).unwrap()).unwrap().is_zero());
            if !a.is_zero() {
                assert!(f9.pow(&a, 0).unwrap().is_one());
                assert_eq!(f9.pow(&a, -1).unwrap(), f9.inv(&a).unwrap());
            }
        }
    }

    #[test]
    fn context_mismatch() {
        let f9 = gf9();
        let f3 = FieldCtx::prime(3).unwrap();
        assert_eq!(
            f9.add(&f9.one(), &f3.one()).unwrap_err(),
            GfError::ContextMismatch
        );
    }

    #[test]
    fn enumeration_order_and_count() {
        let f3 = FieldCtx::prime(3).unwrap();
        let all: Vec<_> = f3.elements().map(|e| e.coeffs().to_vec()).collect();
        assert_eq!(all, vec![vec![], vec![1], vec![2]]);
        let f9 = gf9();
        let all: Vec<_> = f9.elements().collect();
        assert_eq!(all.len(), 9);
        assert!(all[0].is_zero());
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let f25 = FieldCtx::extension(5, 2, Some(&[2, 4, 1])).unwrap();
        assert_eq!(f25.elements().count(), 25);
        let f81 = FieldCtx::extension(3, 4, Some(&[2, 0, 0, 2, 1])).unwrap();
        let all: Vec<_> = f81.elements().collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all.len(), 81);
    }

    #[test]
    fn subfield_membership() {
        let f9 = gf9();
        assert!(f9.in_subfield(&f9.constant(2), 1).unwrap());
        assert!(!f9.in_subfield(&f9.generator(), 1).unwrap());
        assert!(f9.in_subfield(&f9.generator(), 2).unwrap());
        assert!(matches!(
            f9.in_subfield(&f9.one(), 3),
            Err(GfError::NotASubfield { .. })
        ));
    }

    #[test]
    fn display() {
        let f81 = FieldCtx::extension(3, 4, Some(&[2, 0, 0, 2, 1])).unwrap();
        assert_eq!(el(&f81, &[1, 0, 2, 2]).to_string(), "2*d^3+2*d^2+1");
        assert_eq!(el(&f81, &[0, 1]).to_string(), "d");
        assert_eq!(f81.zero().to_string(), "0");
    }
}
