//! Shared fixtures for the benchmarks in `benches/engine.rs`.

use fixpoint_core::{BakerInstance, MapUnderTest, Norm, Point, Result, SplitMix64};

/// A seeded linear recursive instance of the given size, matching the
/// shapes the test suites exercise.
pub fn baker_fixture(n: usize, d: usize, seed: u64) -> Result<BakerInstance> {
    let mut rng = SplitMix64::new(seed);
    let psi = (0..n).map(|_| rng.index(n)).collect();
    let a = (0..n).map(|_| rng.uniform(-0.9, 0.9)).collect();
    let b = (0..n)
        .map(|_| Point::new((0..d).map(|_| rng.uniform(-10.0, 10.0)).collect()))
        .collect::<Result<Vec<_>>>()?;
    BakerInstance::new(psi, a, b, Norm::Max)
}

/// The one-dimensional cosine map, the slowest-converging member of the
/// desk catalogue.
pub fn cosine_map() -> MapUnderTest {
    MapUnderTest::from_fn("cos(x)", 1, |c| vec![c[0].cos()])
}
