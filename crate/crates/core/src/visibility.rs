//! Visibility of directed edges in MAGs and PAGs.
//!
//! `X -> Y` is visible if some `V` not adjacent to `Y` has an edge into `X`,
//! either directly or through a collider path whose interior nodes are all
//! parents of `Y`. In DAGs and CPDAGs every directed edge is visible.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Edge, GraphClass, Mark, MixedGraph};
use crate::nodeset::{NodeId, NodeSet};

/// Whether the directed edge `tail -> head` is visible in `g`.
pub fn is_visible(g: &MixedGraph, tail: NodeId, head: NodeId) -> Result<bool> {
    if !g.has_directed(tail, head) {
        return Err(Error::NotDirectedEdge(
            g.name(tail).to_string(),
            g.name(head).to_string(),
        ));
    }
    Ok(visible_unchecked(g, tail, head))
}

fn visible_unchecked(g: &MixedGraph, tail: NodeId, head: NodeId) -> bool {
    if matches!(g.class(), GraphClass::Dag | GraphClass::Cpdag) {
        return true;
    }
    let pa_head = g.parents(&NodeSet::singleton(head));
    // Frontier nodes are `tail` and interior collider nodes; each has an
    // arrowhead at itself on the edge pointing back towards `tail`.
    let mut seen = NodeSet::singleton(tail);
    let mut queue = VecDeque::from([tail]);
    while let Some(w) = queue.pop_front() {
        for a in g.adjacencies(w) {
            if a.here != Mark::Arrow || a.node == head {
                continue;
            }
            if !g.is_adjacent(a.node, head) {
                return true;
            }
            if a.there == Mark::Arrow && pa_head.contains(a.node) && seen.insert(a.node) {
                queue.push_back(a.node);
            }
        }
    }
    false
}

/// All visible directed edges whose tail is in `x`.
pub fn visible_out_edges(g: &MixedGraph, x: &NodeSet) -> Vec<Edge> {
    let mut out = Vec::new();
    for t in x {
        for a in g.adjacencies(t) {
            if a.here == Mark::Tail && a.there == Mark::Arrow && visible_unchecked(g, t, a.node) {
                out.push(Edge::directed(t, a.node));
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::io::parse_graph;

    fn vis(g: &MixedGraph, t: &str, h: &str) -> bool {
        is_visible(g, g.id(t).unwrap(), g.id(h).unwrap()).unwrap()
    }

    fn out_edges(g: &MixedGraph, x: &[&str]) -> Vec<String> {
        let mut v: Vec<String> = visible_out_edges(g, &g.node_set(x).unwrap())
            .iter()
            .map(|e| crate::io::edge_string(g, e))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn fixture_examples() {
        assert!(vis(&fixtures::fig3c(), "X", "Y"));
        assert!(!vis(&fixtures::fig3b(), "X", "Y"));
        assert!(vis(&fixtures::fig2b(), "X", "Y"));
        assert_eq!(out_edges(&fixtures::fig3c(), &["X"]), vec!["X -> V2", "X -> Y"]);
        assert_eq!(out_edges(&fixtures::fig4b(), &["X"]), vec!["X -> V4"]);
    }

    #[test]
    fn collider_path_needs_parents_of_head() {
        // Same as the collider-path fixture but V3 is no longer a parent of Y.
        let g = parse_graph(
            "type: mag\nV1 -> V2\nV2 <-> V3\nV3 <-> X\nX -> Y\nV2 -> Y\n",
        )
        .unwrap();
        // V3 is not adjacent to Y, so it witnesses directly.
        assert!(vis(&g, "X", "Y"));
        let g = parse_graph(
            "type: mag\nV1 -> V2\nV2 <-> V3\nV3 <-> X\nX -> Y\nV3 -> Y\nV2 <-> Y\n",
        )
        .unwrap();
        // V2 is adjacent to Y but not a parent: the path stops at V3.
        assert!(!vis(&g, "X", "Y"));
    }

    #[test]
    fn dag_edges_always_visible() {
        let g = fixtures::fig8();
        for e in g.edges() {
            let (t, h) = e.as_directed().unwrap();
            assert!(is_visible(&g, t, h).unwrap());
        }
        assert_eq!(visible_out_edges(&g, &g.node_set(&["X1"]).unwrap()).len(), 1);
    }

    #[test]
    fn not_directed() {
        let g = fixtures::fig3a();
        assert!(matches!(
            is_visible(&g, g.id("X").unwrap(), g.id("Y").unwrap()),
            Err(Error::NotDirectedEdge(..))
        ));
    }

    #[test]
    fn removing_nodes_never_creates_visibility() {
        for (name, _) in fixtures::ALL {
            let g = fixtures::by_name(name).unwrap();
            if !matches!(g.class(), GraphClass::Mag | GraphClass::Pag) {
                continue;
            }
            for e in g.edges() {
                let Some((t, h)) = e.as_directed() else { continue };
                let before = is_visible(&g, t, h).unwrap();
                for v in 0..g.n() {
                    if v == t || v == h {
                        continue;
                    }
                    let mut keep = g.all_nodes();
                    keep.remove(v);
                    let sub = g.induced_subgraph(&keep);
                    let (st, sh) = (sub.id(g.name(t)).unwrap(), sub.id(g.name(h)).unwrap());
                    let after = is_visible(&sub, st, sh).unwrap();
                    assert!(before || !after, "{name}: removing {} made edge visible", g.name(v));
                }
            }
        }
    }
}
