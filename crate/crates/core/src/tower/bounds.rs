use num_rational::Ratio;

use super::TowerError;

/// `2m / (|S0| - 1)` as a reduced fraction.
pub fn lambda_bound(m: u32, s0_size: usize) -> Result<Ratio<u64>, TowerError> {
    if s0_size <= 1 {
        return Err(TowerError::DegenerateBound(s0_size));
    }
    Ok(Ratio::new(2 * m as u64, s0_size as u64 - 1))
}

/// Rational places of `F_i` lying over split or totally ramified places:
/// `[F_i : F_0] * |Split| + |Cram|`.
pub fn places_lower_bound(split_size: u128, cram_size: u128, ext_degree: u128) -> u128 {
    ext_degree * split_size + cram_size
}

/// The level-`i` instance with `m` split places and the totally ramified pole:
/// `m^{i+1} + 1`.
pub fn split_places_bound(m: u32, level: u32) -> u128 {
    places_lower_bound(m as u128, 1, (m as u128).pow(level))
}

/// `sqrt(q) - 1` when `q` is a perfect square.
pub fn ihara_square_bound(q: u128) -> Option<u128> {
    let r = (q as f64).sqrt().round() as u128;
    (r.checked_mul(r) == Some(q)).then(|| r - 1)
}
