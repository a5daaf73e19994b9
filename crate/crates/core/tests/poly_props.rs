use std::collections::BTreeMap;

use kts_core::gf::{embedding_between, FieldCtx, FieldElement};
use kts_core::poly::{all_roots, distinct_roots_in, squarefree_decomposition, DegreeBudget, Poly};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gf9() -> FieldCtx {
    FieldCtx::extension(3, 2, Some(&[2, 2, 1])).unwrap()
}

fn gf25() -> FieldCtx {
    FieldCtx::extension(5, 2, Some(&[2, 4, 1])).unwrap()
}

fn random_poly(ctx: &FieldCtx, rng: &mut impl Rng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(1..=max_deg);
    let q = ctx.order();
    let mut coeffs: Vec<FieldElement> = (0..deg)
        .map(|_| ctx.element_at(rng.gen_range(0..q)).unwrap())
        .collect();
    coeffs.push(ctx.element_at(rng.gen_range(1..q)).unwrap());
    Poly::new(ctx, coeffs).unwrap()
}

fn poly_from(ctx: &FieldCtx, idx: &[u128]) -> Poly {
    Poly::new(
        ctx,
        idx.iter().map(|&i| ctx.element_at(i).unwrap()).collect(),
    )
    .unwrap()
}

/// Root multiplicities over the coefficient field, by evaluation and
/// repeated division.
fn oracle_roots(g: &Poly) -> BTreeMap<FieldElement, u32> {
    let ctx = g.ctx();
    let mut out = BTreeMap::new();
    for x in ctx.elements() {
        if !g.eval(&x).unwrap().is_zero() {
            continue;
        }
        let linear = Poly::new(ctx, vec![ctx.neg(&x).unwrap(), ctx.one()]).unwrap();
        let mut h = g.clone();
        let mut k = 0;
        loop {
            let (quo, rem) = h.divmod(&linear).unwrap();
            if !rem.is_zero() {
                break;
            }
            h = quo;
            k += 1;
        }
        out.insert(x, k);
    }
    out
}

#[test]
fn root_finder_matches_exhaustive_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (ctx, n) in [(gf9(), 250), (gf25(), 250)] {
        for _ in 0..n {
            let g = random_poly(&ctx, &mut rng, 4);
            let found = all_roots(&g, DegreeBudget::default()).unwrap();
            let map = embedding_between(&ctx, &found.ambient).unwrap();
            assert_eq!(
                found.multiplicity_sum() as usize,
                g.degree().unwrap(),
                "{g}"
            );
            let lifted = g.lift(&map).unwrap();
            for r in found.distinct() {
                assert!(lifted.eval(r).unwrap().is_zero());
            }
            let base_images: BTreeMap<FieldElement, FieldElement> = ctx
                .elements()
                .map(|x| (map.apply(&x).unwrap(), x))
                .collect();
            let in_base: BTreeMap<FieldElement, u32> = found
                .roots
                .iter()
                .filter_map(|(r, k)| base_images.get(r).map(|x| (x.clone(), *k)))
                .collect();
            assert_eq!(in_base, oracle_roots(&g), "{g}");
            let direct: Vec<_> =
                distinct_roots_in(&g, &kts_core::EmbeddingMap::identity(&ctx)).unwrap();
            assert_eq!(direct, in_base.keys().cloned().collect::<Vec<_>>(), "{g}");
        }
    }
}

#[test]
fn root_sets_are_frobenius_stable() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for ctx in [gf9(), gf25()] {
        for _ in 0..100 {
            let g = random_poly(&ctx, &mut rng, 4);
            let found = all_roots(&g, DegreeBudget::default()).unwrap();
            let amb = &found.ambient;
            let by_root: BTreeMap<_, _> = found.roots.iter().cloned().collect();
            for (r, k) in &found.roots {
                // x -> x^q fixes the coefficients of g
                let image = amb.pow(r, ctx.order() as i128).unwrap();
                assert_eq!(by_root.get(&image), Some(k), "{g}");
            }
        }
    }
}

#[test]
fn separability_matches_multiplicities() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for ctx in [gf9(), gf25()] {
        for _ in 0..150 {
            let g = random_poly(&ctx, &mut rng, 4);
            let found = all_roots(&g, DegreeBudget::default()).unwrap();
            let simple = found.roots.iter().all(|(_, k)| *k == 1);
            assert_eq!(g.is_separable().unwrap(), simple, "{g}");
        }
    }
}

#[test]
fn squarefree_parts_multiply_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for ctx in [gf9(), gf25()] {
        for _ in 0..100 {
            let a = random_poly(&ctx, &mut rng, 3);
            let b = random_poly(&ctx, &mut rng, 2);
            let g = a.mul(&b).unwrap().mul(&b).unwrap();
            let mut product = Poly::one(&ctx);
            for (part, k) in squarefree_decomposition(&g).unwrap() {
                assert!(part.is_separable().unwrap());
                for _ in 0..k {
                    product = product.mul(&part).unwrap();
                }
            }
            assert_eq!(product, g.monic());
        }
    }
}

#[test]
fn frobenius_power_polynomial_is_inseparable() {
    let ctx = gf9();
    // T^3 + d = (T + d^3)^3
    let g = Poly::new(
        &ctx,
        vec![ctx.generator(), ctx.zero(), ctx.zero(), ctx.one()],
    )
    .unwrap();
    assert!(!g.is_separable().unwrap());
    let found = all_roots(&g, DegreeBudget::default()).unwrap();
    assert_eq!(found.roots.len(), 1);
    assert_eq!(found.roots[0].1, 3);
}

#[test]
fn budget_is_enforced() {
    let ctx = gf9();
    // a cubic without roots in GF(9) is irreducible, so its roots live in GF(3^6)
    let g = ctx
        .elements()
        .skip(1)
        .map(|b| Poly::new(&ctx, vec![b, ctx.one(), ctx.zero(), ctx.one()]).unwrap())
        .find(|g| oracle_roots(g).is_empty())
        .expect("some T^3 + T + b has no roots");
    assert_eq!(
        all_roots(&g, DegreeBudget::default()).unwrap().ambient.s(),
        6
    );
    assert!(all_roots(&g, DegreeBudget { max_degree: 5 }).is_err());
}

proptest! {
    #[test]
    fn gcd_divides_both(a in prop::collection::vec(0u128..25, 1..6), b in prop::collection::vec(0u128..25, 1..6),
                        c in prop::collection::vec(0u128..25, 1..4)) {
        let ctx = gf25();
        let (a, b, c) = (poly_from(&ctx, &a), poly_from(&ctx, &b), poly_from(&ctx, &c));
        prop_assume!(!(a.is_zero() && b.is_zero()) && !c.is_zero());
        let g = a.gcd(&b).unwrap();
        prop_assert!(a.rem(&g).unwrap().is_zero());
        prop_assert!(b.rem(&g).unwrap().is_zero());
        prop_assert_eq!(g.leading().map(|l| l.is_one()), Some(true));
        let ac = a.mul(&c).unwrap();
        let bc = b.mul(&c).unwrap();
        prop_assert!(ac.gcd(&bc).unwrap().rem(&c).unwrap().is_zero());
    }

    #[test]
    fn division_identity(a in prop::collection::vec(0u128..9, 0..7), b in prop::collection::vec(0u128..9, 1..4)) {
        let ctx = gf9();
        let (a, b) = (poly_from(&ctx, &a), poly_from(&ctx, &b));
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.divmod(&b).unwrap();
        prop_assert_eq!(quo.mul(&b).unwrap().add(&rem).unwrap(), a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }
}
