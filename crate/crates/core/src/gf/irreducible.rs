use super::{prime_divisors, FieldCtx, GfError};
use crate::poly::Poly;

/// `T^{p^k} mod f` for k = 0..=upto.
fn frobenius_powers(f: &Poly, upto: usize) -> Vec<Poly> {
    let p = f.ctx().p() as u128;
    let mut out = Vec::with_capacity(upto + 1);
    let mut cur = Poly::x(f.ctx()).divmod_(f).expect("nonzero modulus").1;
    out.push(cur.clone());
    for _ in 0..upto {
        cur = cur.powmod(p, f).expect("nonzero modulus");
        out.push(cur.clone());
    }
    out
}

fn as_prime_poly(p: u32, modulus: &[u32]) -> Result<Poly, GfError> {
    let fp = FieldCtx::prime(p)?;
    Ok(Poly::raw(
        &fp,
        modulus.iter().map(|&c| fp.constant(c as i64)).collect(),
    ))
}

/// Rabin's test for a monic polynomial over GF(p), coefficients ascending.
pub fn is_irreducible(p: u32, modulus: &[u32]) -> Result<bool, GfError> {
    let f = as_prime_poly(p, modulus)?;
    let s = match f.degree() {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(s) => s,
    };
    let powers = frobenius_powers(&f, s);
    let x = Poly::x(f.ctx());
    if !powers[s].sub_(&x).is_zero() {
        return Ok(false);
    }
    for l in prime_divisors(s) {
        if !f.gcd_(&powers[s / l].sub_(&x)).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Degree of the smallest irreducible factor; equals the degree when the
/// polynomial is irreducible.
pub fn smallest_factor_degree(p: u32, modulus: &[u32]) -> Result<usize, GfError> {
    let f = as_prime_poly(p, modulus)?;
    let s = f.degree().unwrap_or(0);
    let powers = frobenius_powers(&f, s / 2);
    let x = Poly::x(f.ctx());
    for (k, xk) in powers.iter().enumerate().skip(1) {
        if !f.gcd_(&xk.sub_(&x)).is_one() {
            return Ok(k);
        }
    }
    Ok(s)
}
