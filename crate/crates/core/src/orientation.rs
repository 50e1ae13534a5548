//! Picking a single DAG (MAG) out of the class a CPDAG (PAG) describes.
//!
//! `o->` edges become `->`. The subgraph of `o-o` edges is oriented
//! component by component with maximum cardinality search: every edge points
//! from the node visited first to the node visited later. For a chordal
//! component this creates no cycle and no unshielded collider.

use crate::error::{Error, Result};
use crate::graph::{Edge, GraphClass, Mark, MixedGraph};
use crate::nodeset::{NodeId, NodeSet};

/// Orients `g` into a member of the equivalence class it describes.
/// Graphs without circle marks are returned unchanged.
pub fn orient_to_representative(g: &MixedGraph) -> Result<MixedGraph> {
    orient(g, None)
}

/// Like [`orient_to_representative`], but no circle edge at `x` is oriented
/// into `x`.
pub fn orient_avoiding_into(g: &MixedGraph, x: NodeId) -> Result<MixedGraph> {
    orient(g, Some(x))
}

fn target_class(class: GraphClass) -> GraphClass {
    match class {
        GraphClass::Dag | GraphClass::Cpdag => GraphClass::Dag,
        GraphClass::Mag | GraphClass::Pag => GraphClass::Mag,
    }
}

fn orient(g: &MixedGraph, start: Option<NodeId>) -> Result<MixedGraph> {
    if !g.class().is_partial() {
        return Ok(g.clone());
    }
    let order = mcs_order(g, start)?;
    let mut rank = vec![0usize; g.n()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    g.map_edges(target_class(g.class()), |e| match (e.mark_a, e.mark_b) {
        (Mark::Circle, Mark::Circle) => {
            if rank[e.a] < rank[e.b] {
                Edge::directed(e.a, e.b)
            } else {
                Edge::directed(e.b, e.a)
            }
        }
        (Mark::Circle, m) => Edge::new(e.a, e.b, Mark::Tail, m),
        (m, Mark::Circle) => Edge::new(e.a, e.b, m, Mark::Tail),
        _ => *e,
    })
}

fn circle_neighbors(g: &MixedGraph, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
    g.adjacencies(v)
        .iter()
        .filter(|a| a.here == Mark::Circle && a.there == Mark::Circle)
        .map(|a| a.node)
}

/// Maximum cardinality search over every `o-o` component, lowest index
/// breaking ties. The component containing `start` begins there. Fails if a
/// component is not chordal.
fn mcs_order(g: &MixedGraph, start: Option<NodeId>) -> Result<Vec<NodeId>> {
    let n = g.n();
    let mut visited = NodeSet::new();
    let mut order = Vec::with_capacity(n);
    let mut roots: Vec<NodeId> = start.into_iter().chain(0..n).collect();
    roots.dedup();
    for root in roots {
        if visited.contains(root) {
            continue;
        }
        let mut weight = vec![0usize; n];
        let mut frontier = NodeSet::singleton(root);
        let mut component = Vec::new();
        let mut next = Some(root);
        while let Some(v) = next {
            visited.insert(v);
            frontier.remove(v);
            component.push(v);
            for w in circle_neighbors(g, v) {
                if !visited.contains(w) {
                    weight[w] += 1;
                    frontier.insert(w);
                }
            }
            next = frontier.iter().max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)));
        }
        check_chordal(g, &component)?;
        order.extend(component);
    }
    Ok(order)
}

/// The reverse of an MCS order is a perfect elimination order iff the
/// component is chordal.
fn check_chordal(g: &MixedGraph, order: &[NodeId]) -> Result<()> {
    let mut earlier = NodeSet::new();
    for &v in order {
        let before: Vec<NodeId> = circle_neighbors(g, v).filter(|w| earlier.contains(*w)).collect();
        for (i, &a) in before.iter().enumerate() {
            for &b in &before[i + 1..] {
                if !g.is_adjacent(a, b) {
                    let mut names: Vec<String> = order.iter().map(|&u| g.name(u).to_string()).collect();
                    names.sort();
                    return Err(Error::NonChordalCircleComponent(names));
                }
            }
        }
        earlier.insert(v);
    }
    Ok(())
}

/// Unshielded colliders `(a, c, b)` with `a < b` formed by directed edges.
fn v_structures(g: &MixedGraph) -> Vec<(NodeId, NodeId, NodeId)> {
    let mut out = Vec::new();
    for c in 0..g.n() {
        let pa = g.parents(&NodeSet::singleton(c)).to_vec();
        for (i, &a) in pa.iter().enumerate() {
            for &b in &pa[i + 1..] {
                if !g.is_adjacent(a, b) {
                    out.push((a, c, b));
                }
            }
        }
    }
    out
}

/// Largest number of `o-o` edges [`list_dag_extensions`] will brute-force.
pub const EXTENSION_EDGE_LIMIT: usize = 20;

/// Every DAG in the class of `cpdag`, found by trying all orientations of
/// its `o-o` edges. `limit = 0` means no limit.
pub fn list_dag_extensions(cpdag: &MixedGraph, limit: usize) -> Result<Vec<MixedGraph>> {
    match cpdag.class() {
        GraphClass::Dag => return Ok(vec![cpdag.clone()]),
        GraphClass::Cpdag => {}
        class => return Err(Error::ClassUnsupported { op: "list_dag_extensions", class }),
    }
    let circles: Vec<usize> = (0..cpdag.edge_count())
        .filter(|&i| cpdag.edges()[i].has_circle())
        .collect();
    if circles.len() > EXTENSION_EDGE_LIMIT {
        return Err(Error::GraphTooLarge { nodes: circles.len(), limit: EXTENSION_EDGE_LIMIT });
    }
    let want = v_structures(cpdag);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << circles.len()) {
        let mut edges = cpdag.edges().to_vec();
        for (bit, &i) in circles.iter().enumerate() {
            let e = edges[i];
            edges[i] = if mask >> bit & 1 == 0 {
                Edge::directed(e.a, e.b)
            } else {
                Edge::directed(e.b, e.a)
            };
        }
        let Ok(dag) = MixedGraph::build(cpdag.names().to_vec(), edges, GraphClass::Dag) else {
            continue;
        };
        if v_structures(&dag) == want {
            if limit > 0 && out.len() == limit {
                return Err(Error::TooManyExtensions(limit));
            }
            out.push(dag);
        }
    }
    Ok(out)
}
