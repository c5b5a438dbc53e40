//! Shared instance corpus for the benchmarks.

use actcover::generator::{generate, GeneratorSpec};
use actcover::Instance;

/// Deterministic instance at the given size, with moderate cost spread.
pub fn sized_instance(n: usize, m: usize) -> Instance {
    generate(&GeneratorSpec {
        n,
        m,
        k_max: 5,
        theta_target: 16.0,
        cost_scale: 1_000,
        seed: 42,
        bipartite: false,
    })
    .expect("benchmark instance generates")
}

/// Largest instance the exact oracle should see.
pub fn oracle_instance() -> Instance {
    generate(&GeneratorSpec {
        n: 6,
        m: 16,
        k_max: 3,
        theta_target: 8.0,
        cost_scale: 50,
        seed: 7,
        bipartite: false,
    })
    .expect("oracle instance generates")
}
