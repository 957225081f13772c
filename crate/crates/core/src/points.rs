//! Seeded random interior points with small denominators.

use num_bigint::BigInt;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bary::RationalPoint;
use crate::error::{Error, Result};
use crate::Rational;

/// Largest common denominator used for sample points.
pub const MAX_DENOMINATOR: usize = 7;

/// `count` strictly interior points of `S_n` with coordinates `p_i / D`,
/// `n + 1 <= D <= 7`, `p_i >= 1`. Deterministic in `seed`.
pub fn interior_points(n: usize, count: usize, seed: u64) -> Result<Vec<RationalPoint>> {
    if n + 1 > MAX_DENOMINATOR {
        return Err(Error::DimensionMismatch(format!(
            "no interior point of S_{n} with denominator <= {MAX_DENOMINATOR}"
        )));
    }
    let labels: Vec<usize> = (0..=n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    (0..count)
        .map(|_| {
            let d = rng.gen_range(n + 1..=MAX_DENOMINATOR);
            // composition of d into n + 1 positive parts via n cut points
            let mut cuts: Vec<usize> = sample(&mut rng, d - 1, n).into_iter().map(|c| c + 1).collect();
            cuts.sort_unstable();
            let mut prev = 0;
            let mut coords = Vec::with_capacity(n + 1);
            for c in cuts.into_iter().chain(std::iter::once(d)) {
                coords.push(Rational::new(BigInt::from(c - prev), BigInt::from(d)));
                prev = c;
            }
            RationalPoint::new(&labels, coords)
        })
        .collect()
}
