//! Synthetic benchmark instances.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dataset::Dataset;

const CLOUDS: usize = 10;
const CENTER_RANGE: std::ops::Range<f64> = -10.0..10.0;

/// Generates `n` points from ten isotropic unit-variance 2-D Gaussian
/// clouds with centers drawn uniformly from the square `[-10, 10]^2`,
/// split round-robin across the clouds. Colors are uniform over
/// `0..m`. Byte-for-byte reproducible for a fixed seed.
pub fn gen_synthetic(n: usize, m: usize, seed: u64) -> Dataset {
    assert!(m >= 1, "need at least one color");
    assert!(n >= m, "need at least as many points as colors");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centers: Vec<(f64, f64)> = (0..CLOUDS)
        .map(|_| {
            (
                rng.random_range(CENTER_RANGE),
                rng.random_range(CENTER_RANGE),
            )
        })
        .collect();
    let mut points = Vec::with_capacity(n);
    let mut colors = Vec::with_capacity(n);
    for i in 0..n {
        let (cx, cy) = centers[i % CLOUDS];
        let dx: f64 = rng.sample(StandardNormal);
        let dy: f64 = rng.sample(StandardNormal);
        points.push(vec![cx + dx, cy + dy]);
        colors.push(rng.random_range(0..m));
    }
    Dataset::euclidean(points, colors, m).expect("generated instance is valid")
}
