//! Deterministic inputs shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use seriesfact::{NPPoint, RingTag, Series};

/// A random integer polynomial of the given degree with constant term `a0`,
/// times `1/(1-z)` so that every coefficient is nonzero.
pub fn dense_series(seed: u64, a0: i64, degree: usize) -> Series {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = vec![a0];
    coeffs.extend((0..degree).map(|_| rng.gen_range(-1000..=1000i64)));
    Series::from_ints(&coeffs)
        .mul(&Series::geometric(RingTag::Int))
        .expect("same ring")
}

/// `n` points `(i, v)` with distinct indices and valuations up to `max_v`.
pub fn random_points(seed: u64, n: u64, max_v: u64) -> Vec<NPPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|i| NPPoint::new(i, rng.gen_range(0..=max_v))).collect()
}
