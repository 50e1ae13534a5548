//! Random graphs for property tests and benchmarks.
//!
//! MAGs come from latent projection of random DAGs and CPDAGs from the
//! v-structures of a random DAG closed under Meek's rules, so every
//! generated graph is a valid member of its class.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Edge, GraphClass, Mark, MixedGraph};
use crate::nodeset::{NodeId, NodeSet};
use crate::reach::m_connected;

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("V{i}")).collect()
}

/// A DAG on `n` nodes named `V0..`; each pair is joined with probability
/// `p`, oriented along a random causal order.
pub fn random_dag<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> MixedGraph {
    let mut order: Vec<NodeId> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push(Edge::directed(order[i], order[j]));
            }
        }
    }
    MixedGraph::build(names(n), edges, GraphClass::Dag).expect("acyclic by construction")
}

/// The MAG over the first `observed` nodes of `dag`, marginalizing the
/// rest.
pub fn latent_projection(dag: &MixedGraph, observed: usize) -> MixedGraph {
    let obs = NodeSet::full(observed);
    let mut edges = Vec::new();
    for a in 0..observed {
        let an_a = dag.ancestors(&NodeSet::singleton(a));
        for b in a + 1..observed {
            let an_b = dag.ancestors(&NodeSet::singleton(b));
            let pair = NodeSet::from_iter([a, b]);
            let sep = an_a.union(&an_b).intersection(&obs).difference(&pair);
            let connected = m_connected(dag, &NodeSet::singleton(a), &NodeSet::singleton(b), &sep)
                .expect("disjoint sets");
            if !connected {
                continue;
            }
            edges.push(if an_b.contains(a) {
                Edge::directed(a, b)
            } else if an_a.contains(b) {
                Edge::directed(b, a)
            } else {
                Edge::new(a, b, Mark::Arrow, Mark::Arrow)
            });
        }
    }
    MixedGraph::build(dag.names()[..observed].to_vec(), edges, GraphClass::Mag)
        .expect("latent projections are ancestral")
}

/// A MAG on `observed` nodes from a random DAG with `latent` extra nodes.
pub fn random_mag<R: Rng + ?Sized>(rng: &mut R, observed: usize, latent: usize, p: f64) -> MixedGraph {
    latent_projection(&random_dag(rng, observed + latent, p), observed)
}

/// The CPDAG of the Markov equivalence class of `dag`.
#[allow(clippy::needless_range_loop)]
pub fn cpdag_of(dag: &MixedGraph) -> MixedGraph {
    let n = dag.n();
    // directed[u][v]: u -> v is compelled so far.
    let mut directed = vec![vec![false; n]; n];
    for c in 0..n {
        let pa = dag.parents(&NodeSet::singleton(c)).to_vec();
        for (i, &a) in pa.iter().enumerate() {
            for &b in &pa[i + 1..] {
                if !dag.is_adjacent(a, b) {
                    directed[a][c] = true;
                    directed[b][c] = true;
                }
            }
        }
    }
    let undirected = |d: &Vec<Vec<bool>>, u: NodeId, v: NodeId| {
        dag.is_adjacent(u, v) && !d[u][v] && !d[v][u]
    };
    loop {
        let mut changed = false;
        for e in dag.edges() {
            let (t, h) = e.as_directed().expect("DAG edge");
            for (a, b) in [(t, h), (h, t)] {
                if !undirected(&directed, a, b) {
                    continue;
                }
                // R1: c -> a - b with c, b non-adjacent.
                let r1 = (0..n).any(|c| directed[c][a] && !dag.is_adjacent(c, b) && c != b);
                // R2: a -> c -> b.
                let r2 = (0..n).any(|c| directed[a][c] && directed[c][b]);
                // R3: a - c -> b, a - d -> b, c and d non-adjacent.
                let r3 = {
                    let mids: Vec<NodeId> = (0..n)
                        .filter(|&c| undirected(&directed, a, c) && directed[c][b])
                        .collect();
                    mids.iter().enumerate().any(|(i, &c)| {
                        mids[i + 1..].iter().any(|&d| !dag.is_adjacent(c, d))
                    })
                };
                if r1 || r2 || r3 {
                    directed[a][b] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let edges = dag
        .edges()
        .iter()
        .map(|e| {
            let (t, h) = e.as_directed().unwrap();
            if directed[t][h] {
                *e
            } else {
                Edge::new(t, h, Mark::Circle, Mark::Circle)
            }
        })
        .collect();
    MixedGraph::build(dag.names().to_vec(), edges, GraphClass::Cpdag).expect("valid CPDAG")
}

/// A random CPDAG on `n` nodes.
pub fn random_cpdag<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> MixedGraph {
    cpdag_of(&random_dag(rng, n, p))
}

/// Random pairwise disjoint `(X, Y, Z)` over `0..n` with `X` and `Y`
/// non-empty. Each remaining node joins `Z` with probability `pz`.
/// Requires `n >= 2`.
pub fn random_query<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    max_x: usize,
    max_y: usize,
    pz: f64,
) -> (NodeSet, NodeSet, NodeSet) {
    assert!(n >= 2);
    let mut order: Vec<NodeId> = (0..n).collect();
    order.shuffle(rng);
    let nx = rng.gen_range(1..=max_x.clamp(1, n - 1));
    let ny = rng.gen_range(1..=max_y.clamp(1, n - nx));
    let x: NodeSet = order[..nx].iter().copied().collect();
    let y: NodeSet = order[nx..nx + ny].iter().copied().collect();
    let z: NodeSet = order[nx + ny..].iter().copied().filter(|_| rng.gen_bool(pz)).collect();
    (x, y, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orientation::list_dag_extensions;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dag_is_in_its_cpdag_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let d = random_dag(&mut rng, 6, 0.4);
            let c = cpdag_of(&d);
            let ext = list_dag_extensions(&c, 0).unwrap();
            assert!(ext.contains(&d));
            // Every extension has the same CPDAG.
            for e in &ext {
                assert_eq!(cpdag_of(e), c);
            }
        }
    }

    #[test]
    fn latent_projection_examples() {
        // X <- L -> Y with L latent gives X <-> Y.
        let d = MixedGraph::build(
            vec!["X".into(), "Y".into(), "L".into()],
            vec![Edge::directed(2, 0), Edge::directed(2, 1)],
            GraphClass::Dag,
        )
        .unwrap();
        let m = latent_projection(&d, 2);
        assert_eq!(m.edge_between(0, 1), Some(Edge::new(0, 1, Mark::Arrow, Mark::Arrow)));
        // X -> L -> Y gives X -> Y.
        let d = MixedGraph::build(
            vec!["X".into(), "Y".into(), "L".into()],
            vec![Edge::directed(0, 2), Edge::directed(2, 1)],
            GraphClass::Dag,
        )
        .unwrap();
        assert!(latent_projection(&d, 2).has_directed(0, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let m = random_mag(&mut rng, 6, 3, 0.4);
            assert_eq!(m.class(), GraphClass::Mag);
        }
    }

    #[test]
    fn queries_are_disjoint() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let (x, y, z) = random_query(&mut rng, 5, 2, 2, 0.5);
            assert!(!x.is_empty() && !y.is_empty());
            assert!(x.is_disjoint(&y) && x.is_disjoint(&z) && y.is_disjoint(&z));
        }
    }
}
