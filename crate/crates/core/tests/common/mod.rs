#![allow(dead_code)]

use adjset_core::random::{random_cpdag, random_dag, random_mag, random_query};
use adjset_core::{MixedGraph, NodeSet};
use rand::Rng;

pub struct Instance {
    pub g: MixedGraph,
    pub x: NodeSet,
    pub y: NodeSet,
    pub z: NodeSet,
}

pub fn dag_instance<R: Rng>(rng: &mut R, max_n: usize) -> Instance {
    let n = rng.gen_range(3..=max_n);
    let p = rng.gen_range(0.2..0.6);
    let g = random_dag(rng, n, p);
    query(rng, g)
}

pub fn mag_instance<R: Rng>(rng: &mut R, max_n: usize) -> Instance {
    let n = rng.gen_range(3..=max_n);
    let latent = rng.gen_range(0..=3);
    let p = rng.gen_range(0.2..0.6);
    let g = random_mag(rng, n, latent, p);
    query(rng, g)
}

pub fn cpdag_instance<R: Rng>(rng: &mut R, max_n: usize) -> Instance {
    let n = rng.gen_range(3..=max_n);
    let p = rng.gen_range(0.2..0.7);
    let g = random_cpdag(rng, n, p);
    query(rng, g)
}

pub fn query<R: Rng>(rng: &mut R, g: MixedGraph) -> Instance {
    let pz = rng.gen_range(0.0..0.7);
    let (x, y, z) = random_query(rng, g.n(), 2, 2, pz);
    Instance { g, x, y, z }
}

/// Every subset of `pool`.
pub fn subsets(pool: &NodeSet) -> Vec<NodeSet> {
    let items = pool.to_vec();
    (0..1u64 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}
