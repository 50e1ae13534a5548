//! Seeded inputs shared by the benchmarks in `benches/`.

use adjset_core::random::{random_dag, random_mag, random_query};
use adjset_core::{MixedGraph, NodeSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A graph with a query `(X, Y, Z)` over it.
pub struct Instance {
    pub g: MixedGraph,
    pub x: NodeSet,
    pub y: NodeSet,
    pub z: NodeSet,
}

/// A sparse random DAG on `n` nodes (expected degree about 3) with small
/// exposure and outcome sets.
pub fn dag_instance(n: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = (3.0 / n as f64).min(0.5);
    let g = random_dag(&mut rng, n, p);
    let (x, y, z) = random_query(&mut rng, n, 2, 2, 0.3);
    Instance { g, x, y, z }
}

/// A MAG on `n` observed nodes with `n / 4` latent ones.
pub fn mag_instance(n: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = (3.0 / n as f64).min(0.5);
    let g = random_mag(&mut rng, n, n / 4, p);
    let (x, y, z) = random_query(&mut rng, n, 2, 2, 0.3);
    Instance { g, x, y, z }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_deterministic() {
        let (a, b) = (dag_instance(20, 1), dag_instance(20, 1));
        assert_eq!(a.g, b.g);
        assert_eq!((a.x, a.y, a.z), (b.x, b.y, b.z));
        assert_eq!(mag_instance(12, 4).g, mag_instance(12, 4).g);
    }
}
