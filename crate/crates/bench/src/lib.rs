//! Inputs shared by the benchmarks.

use kts_core::{FieldCtx, Poly};

/// `count` polynomials of degree `deg` over `ctx`, walking the coefficient
/// space with a fixed stride so runs are comparable.
pub fn sample_polys(ctx: &FieldCtx, deg: usize, count: usize) -> Vec<Poly> {
    let q = ctx.order();
    let mut index: u128 = 1;
    (0..count)
        .map(|_| {
            let mut coeffs: Vec<_> = (0..deg)
                .map(|k| {
                    index = (index * 7 + k as u128 + 3) % (q * q * q);
                    ctx.element_at(index % q).expect("index below q")
                })
                .collect();
            coeffs.push(ctx.one());
            Poly::new(ctx, coeffs).expect("coefficients from ctx")
        })
        .collect()
}
