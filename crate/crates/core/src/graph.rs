//! Mixed graphs with three kinds of edge marks.
//!
//! One type covers DAGs, CPDAGs, MAGs and PAGs. The declared [`GraphClass`]
//! decides which mark combinations are legal and is checked once, at
//! construction. Graphs are immutable afterwards; derived graphs are new
//! values.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ViolationKind};
use crate::nodeset::{NodeId, NodeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mark {
    Tail,
    Arrow,
    Circle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphClass {
    Dag,
    Cpdag,
    Mag,
    Pag,
}

impl GraphClass {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphClass::Dag => "dag",
            GraphClass::Cpdag => "cpdag",
            GraphClass::Mag => "mag",
            GraphClass::Pag => "pag",
        }
    }

    /// True for classes that can contain circle marks.
    pub fn is_partial(self) -> bool {
        matches!(self, GraphClass::Cpdag | GraphClass::Pag)
    }

    fn allows(self, m1: Mark, m2: Mark) -> bool {
        use Mark::*;
        let directed = matches!((m1, m2), (Tail, Arrow) | (Arrow, Tail));
        match self {
            GraphClass::Dag => directed,
            GraphClass::Cpdag => directed || (m1, m2) == (Circle, Circle),
            GraphClass::Mag => directed || (m1, m2) == (Arrow, Arrow),
            GraphClass::Pag => !matches!(
                (m1, m2),
                (Tail, Tail) | (Tail, Circle) | (Circle, Tail)
            ),
        }
    }
}

/// An edge in canonical form: `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub a: NodeId,
    pub b: NodeId,
    pub mark_a: Mark,
    pub mark_b: Mark,
}

impl Edge {
    /// Builds an edge, swapping endpoints into canonical order if needed.
    pub fn new(u: NodeId, v: NodeId, mark_u: Mark, mark_v: Mark) -> Edge {
        if u <= v {
            Edge { a: u, b: v, mark_a: mark_u, mark_b: mark_v }
        } else {
            Edge { a: v, b: u, mark_a: mark_v, mark_b: mark_u }
        }
    }

    /// `u -> v`
    pub fn directed(u: NodeId, v: NodeId) -> Edge {
        Edge::new(u, v, Mark::Tail, Mark::Arrow)
    }

    pub fn mark_at(&self, v: NodeId) -> Mark {
        if v == self.a {
            self.mark_a
        } else {
            debug_assert_eq!(v, self.b);
            self.mark_b
        }
    }

    pub fn other(&self, v: NodeId) -> NodeId {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }

    /// `(tail, head)` if this is a directed edge.
    pub fn as_directed(&self) -> Option<(NodeId, NodeId)> {
        match (self.mark_a, self.mark_b) {
            (Mark::Tail, Mark::Arrow) => Some((self.a, self.b)),
            (Mark::Arrow, Mark::Tail) => Some((self.b, self.a)),
            _ => None,
        }
    }

    pub fn is_bidirected(&self) -> bool {
        self.mark_a == Mark::Arrow && self.mark_b == Mark::Arrow
    }

    pub fn has_circle(&self) -> bool {
        self.mark_a == Mark::Circle || self.mark_b == Mark::Circle
    }
}

/// Adjacency entry as seen from one endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Adj {
    pub node: NodeId,
    /// Mark at the endpoint that owns this adjacency list.
    pub here: Mark,
    /// Mark at `node`.
    pub there: Mark,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedGraph {
    class: GraphClass,
    names: Vec<String>,
    edges: Vec<Edge>,
    adj: Vec<Vec<Adj>>,
}

impl MixedGraph {
    /// Validates and builds a graph.
    pub fn build(names: Vec<String>, edges: Vec<Edge>, class: GraphClass) -> Result<MixedGraph> {
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::DuplicateNode(name.clone()));
            }
        }
        let n = names.len();
        for e in &edges {
            if e.a >= n || e.b >= n {
                return Err(Error::NodeOutOfRange(e.a.max(e.b)));
            }
            if e.a == e.b {
                return Err(Error::SelfLoop(names[e.a].clone()));
            }
        }
        let violation = |kind, witness: Vec<NodeId>| Error::ClassViolation {
            class,
            kind,
            witness: witness.iter().map(|&v| names[v].clone()).collect(),
        };
        for e in &edges {
            if !class.allows(e.mark_a, e.mark_b) {
                return Err(violation(ViolationKind::MarkNotAllowed, vec![e.a, e.b]));
            }
        }
        // Cycles are checked on the raw list so that `X -> Y, Y -> X` reports
        // the cycle rather than a duplicate pair.
        let mut children = vec![Vec::new(); n];
        for e in &edges {
            if let Some((t, h)) = e.as_directed() {
                children[t].push(h);
            }
        }
        if let Some(cycle) = find_directed_cycle(&children) {
            return Err(violation(ViolationKind::DirectedCycle, cycle));
        }
        let mut sorted = edges;
        sorted.sort();
        for w in sorted.windows(2) {
            if (w[0].a, w[0].b) == (w[1].a, w[1].b) {
                return Err(Error::DuplicateEdge(
                    names[w[0].a].clone(),
                    names[w[0].b].clone(),
                ));
            }
        }
        if matches!(class, GraphClass::Mag | GraphClass::Pag) {
            for e in sorted.iter().filter(|e| e.is_bidirected()) {
                for (s, t) in [(e.a, e.b), (e.b, e.a)] {
                    if let Some(mut path) = directed_path(&children, s, t) {
                        path.push(s);
                        return Err(violation(ViolationKind::AlmostDirectedCycle, path));
                    }
                }
            }
        }
        Ok(Self::from_parts(names, sorted, class))
    }

    /// Assembles a graph without validation. `edges` must be sorted and simple.
    pub(crate) fn from_parts(names: Vec<String>, edges: Vec<Edge>, class: GraphClass) -> MixedGraph {
        let mut adj = vec![Vec::new(); names.len()];
        for e in &edges {
            adj[e.a].push(Adj { node: e.b, here: e.mark_a, there: e.mark_b });
            adj[e.b].push(Adj { node: e.a, here: e.mark_b, there: e.mark_a });
        }
        for list in &mut adj {
            list.sort_by_key(|a| a.node);
        }
        MixedGraph { class, names, edges, adj }
    }

    /// Builds a graph from `(from, to, mark_at_from, mark_at_to)` name tuples.
    /// Nodes are numbered in order of first appearance.
    pub fn from_named_edges(
        class: GraphClass,
        edges: &[(&str, &str, Mark, Mark)],
    ) -> Result<MixedGraph> {
        let mut names: Vec<String> = Vec::new();
        let mut index = HashMap::new();
        let mut id = |s: &str, names: &mut Vec<String>| {
            *index.entry(s.to_string()).or_insert_with(|| {
                names.push(s.to_string());
                names.len() - 1
            })
        };
        let mut out = Vec::new();
        for &(u, v, mu, mv) in edges {
            let (iu, iv) = (id(u, &mut names), id(v, &mut names));
            out.push(Edge::new(iu, iv, mu, mv));
        }
        MixedGraph::build(names, out, class)
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn class(&self) -> GraphClass {
        self.class
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v]
    }

    pub fn id(&self, name: &str) -> Option<NodeId> {
        self.names.iter().position(|s| s == name)
    }

    /// Resolves a list of names to a node set.
    pub fn node_set<S: AsRef<str>>(&self, names: &[S]) -> Result<NodeSet> {
        names
            .iter()
            .map(|s| self.id(s.as_ref()).ok_or_else(|| Error::UnknownNode(s.as_ref().to_string())))
            .collect()
    }

    /// Names of the members of `s`, in ascending index order.
    pub fn set_names(&self, s: &NodeSet) -> Vec<String> {
        s.iter().map(|v| self.names[v].clone()).collect()
    }

    pub fn all_nodes(&self) -> NodeSet {
        NodeSet::full(self.n())
    }

    /// Edges sorted by `(a, b)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Neighbors of `v` sorted by index, with marks.
    pub fn adjacencies(&self, v: NodeId) -> &[Adj] {
        &self.adj[v]
    }

    pub fn edge_between(&self, u: NodeId, v: NodeId) -> Option<Edge> {
        self.adj[u]
            .binary_search_by_key(&v, |a| a.node)
            .ok()
            .map(|i| {
                let a = self.adj[u][i];
                Edge::new(u, v, a.here, a.there)
            })
    }

    pub fn is_adjacent(&self, u: NodeId, v: NodeId) -> bool {
        self.adj[u].binary_search_by_key(&v, |a| a.node).is_ok()
    }

    /// Mark at `u` on the edge `u - v`.
    pub fn mark_at(&self, u: NodeId, v: NodeId) -> Option<Mark> {
        self.edge_between(u, v).map(|e| e.mark_at(u))
    }

    pub fn has_directed(&self, u: NodeId, v: NodeId) -> bool {
        self.edge_between(u, v).and_then(|e| e.as_directed()) == Some((u, v))
    }

    pub fn neighbors(&self, v: NodeId) -> NodeSet {
        self.adj[v].iter().map(|a| a.node).collect()
    }

    /// Nodes with a directed edge into some member of `s` (not reflexive).
    pub fn parents(&self, s: &NodeSet) -> NodeSet {
        let mut out = NodeSet::new();
        for v in s {
            for a in &self.adj[v] {
                if a.here == Mark::Arrow && a.there == Mark::Tail {
                    out.insert(a.node);
                }
            }
        }
        out
    }

    pub fn children(&self, s: &NodeSet) -> NodeSet {
        let mut out = NodeSet::new();
        for v in s {
            for a in &self.adj[v] {
                if a.here == Mark::Tail && a.there == Mark::Arrow {
                    out.insert(a.node);
                }
            }
        }
        out
    }

    fn closure(&self, s: &NodeSet, step: impl Fn(&Adj) -> bool) -> NodeSet {
        let mut out = s.clone();
        let mut queue: VecDeque<NodeId> = s.iter().collect();
        while let Some(v) = queue.pop_front() {
            for a in &self.adj[v] {
                if step(a) && out.insert(a.node) {
                    queue.push_back(a.node);
                }
            }
        }
        out
    }

    /// Reflexive ancestors along directed edges.
    pub fn ancestors(&self, s: &NodeSet) -> NodeSet {
        self.closure(s, |a| a.here == Mark::Arrow && a.there == Mark::Tail)
    }

    /// Reflexive descendants along directed edges.
    pub fn descendants(&self, s: &NodeSet) -> NodeSet {
        self.closure(s, |a| a.here == Mark::Tail && a.there == Mark::Arrow)
    }

    /// Reflexive possible descendants: an edge may be followed away from `u`
    /// when the mark at `u` is not an arrowhead.
    pub fn poss_de(&self, s: &NodeSet) -> NodeSet {
        self.closure(s, |a| a.here != Mark::Arrow)
    }

    /// Reflexive possible ancestors, the reverse of [`poss_de`](Self::poss_de).
    pub fn poss_an(&self, s: &NodeSet) -> NodeSet {
        self.closure(s, |a| a.there != Mark::Arrow)
    }

    /// The subgraph on `s`. Nodes are renumbered in ascending original order,
    /// so the `i`-th node of the result is the `i`-th member of `s`.
    pub fn induced_subgraph(&self, s: &NodeSet) -> MixedGraph {
        let mut map = vec![usize::MAX; self.n()];
        let mut names = Vec::new();
        for (i, v) in s.iter().enumerate() {
            map[v] = i;
            names.push(self.names[v].clone());
        }
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| s.contains(e.a) && s.contains(e.b))
            .map(|e| Edge::new(map[e.a], map[e.b], e.mark_a, e.mark_b))
            .collect();
        edges.sort();
        MixedGraph::from_parts(names, edges, self.class)
    }

    /// A copy without the edges for which `drop` returns true.
    pub fn without_edges(&self, drop: impl Fn(&Edge) -> bool) -> MixedGraph {
        let edges = self.edges.iter().copied().filter(|e| !drop(e)).collect();
        MixedGraph::from_parts(self.names.clone(), edges, self.class)
    }

    /// A copy with every edge replaced through `f`, revalidated under `class`.
    pub fn map_edges(&self, class: GraphClass, f: impl Fn(&Edge) -> Edge) -> Result<MixedGraph> {
        let edges = self.edges.iter().map(f).collect();
        MixedGraph::build(self.names.clone(), edges, class)
    }

    /// The moral graph of a DAG: parents of a common child are married and
    /// all orientations dropped. Undirected edges are stored as `o-o`, so the
    /// result carries the `Cpdag` tag.
    pub fn moral_graph(&self) -> Result<MixedGraph> {
        if self.class != GraphClass::Dag {
            return Err(Error::NotADag);
        }
        let mut pairs: Vec<(NodeId, NodeId)> = self.edges.iter().map(|e| (e.a, e.b)).collect();
        for v in 0..self.n() {
            let pa = self.parents(&NodeSet::singleton(v)).to_vec();
            for (i, &p) in pa.iter().enumerate() {
                for &q in &pa[i + 1..] {
                    pairs.push((p, q));
                }
            }
        }
        pairs.sort();
        pairs.dedup();
        let edges = pairs
            .into_iter()
            .map(|(a, b)| Edge::new(a, b, Mark::Circle, Mark::Circle))
            .collect();
        Ok(MixedGraph::from_parts(self.names.clone(), edges, GraphClass::Cpdag))
    }

    /// A topological order of the directed part (parents first).
    pub fn topological_order(&self) -> Vec<NodeId> {
        let n = self.n();
        let mut indeg = vec![0usize; n];
        for e in &self.edges {
            if let Some((_, h)) = e.as_directed() {
                indeg[h] += 1;
            }
        }
        let mut ready: std::collections::BTreeSet<NodeId> =
            (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for a in &self.adj[v] {
                if a.here == Mark::Tail && a.there == Mark::Arrow {
                    indeg[a.node] -= 1;
                    if indeg[a.node] == 0 {
                        ready.insert(a.node);
                    }
                }
            }
        }
        order
    }

    /// Same graph with a different class tag, revalidated.
    pub fn reclassified(&self, class: GraphClass) -> Result<MixedGraph> {
        MixedGraph::build(self.names.clone(), self.edges.clone(), class)
    }
}

/// Returns a directed cycle as `[v0, v1, .., v0]`, if any.
fn find_directed_cycle(children: &[Vec<NodeId>]) -> Option<Vec<NodeId>> {
    let n = children.len();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        state[root] = 1;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < children[v].len() {
                let w = children[v][*i];
                *i += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        parent[w] = v;
                        stack.push((w, 0));
                    }
                    1 => {
                        let mut cycle = vec![v];
                        let mut u = v;
                        while u != w {
                            u = parent[u];
                            cycle.push(u);
                        }
                        cycle.reverse();
                        cycle.push(w);
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

/// Shortest directed path `s -> .. -> t` as a node list, if any.
fn directed_path(children: &[Vec<NodeId>], s: NodeId, t: NodeId) -> Option<Vec<NodeId>> {
    let mut prev = vec![usize::MAX; children.len()];
    let mut seen = vec![false; children.len()];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        if v == t {
            let mut path = vec![t];
            let mut u = t;
            while u != s {
                u = prev[u];
                path.push(u);
            }
            path.reverse();
            return Some(path);
        }
        for &w in &children[v] {
            if !seen[w] {
                seen[w] = true;
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use Mark::*;

    fn set(g: &MixedGraph, names: &[&str]) -> NodeSet {
        g.node_set(names).unwrap()
    }

    #[test]
    fn fig1a_builds() {
        let g = fixtures::fig1a();
        assert_eq!(g.n(), 6);
        assert_eq!(g.edge_count(), 10);
        assert_eq!(g.class(), GraphClass::Cpdag);
    }

    #[test]
    fn empty_dag() {
        let g = MixedGraph::build(vec![], vec![], GraphClass::Dag).unwrap();
        assert_eq!(g.n(), 0);
        assert!(g.descendants(&NodeSet::new()).is_empty());
    }

    #[test]
    fn two_cycle_is_class_violation() {
        let err = MixedGraph::from_named_edges(
            GraphClass::Dag,
            &[("X", "Y", Tail, Arrow), ("Y", "X", Tail, Arrow)],
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::ClassViolation {
                class: GraphClass::Dag,
                kind: ViolationKind::DirectedCycle,
                witness: vec!["X".into(), "Y".into(), "X".into()],
            }
        );
    }

    #[test]
    fn rejects_duplicates_self_loops_and_bad_marks() {
        let dup = MixedGraph::from_named_edges(
            GraphClass::Mag,
            &[("X", "Y", Tail, Arrow), ("X", "Y", Arrow, Arrow)],
        );
        assert!(matches!(dup, Err(Error::DuplicateEdge(..))));
        let lp = MixedGraph::from_named_edges(GraphClass::Dag, &[("A", "A", Tail, Arrow)]);
        assert_eq!(lp, Err(Error::SelfLoop("A".into())));
        for class in [GraphClass::Dag, GraphClass::Mag] {
            let bad = MixedGraph::from_named_edges(class, &[("X", "Y", Circle, Circle)]);
            assert!(matches!(
                bad,
                Err(Error::ClassViolation { kind: ViolationKind::MarkNotAllowed, .. })
            ));
        }
        let tt = MixedGraph::from_named_edges(GraphClass::Pag, &[("X", "Y", Tail, Tail)]);
        assert!(tt.is_err());
        let tc = MixedGraph::from_named_edges(GraphClass::Pag, &[("X", "Y", Circle, Tail)]);
        assert!(tc.is_err());
    }

    #[test]
    fn almost_directed_cycle() {
        let err = MixedGraph::from_named_edges(
            GraphClass::Mag,
            &[("A", "B", Tail, Arrow), ("B", "C", Tail, Arrow), ("A", "C", Arrow, Arrow)],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::ClassViolation { kind: ViolationKind::AlmostDirectedCycle, .. }
        ));
    }

    #[test]
    fn ancestral_queries() {
        let g = fixtures::fig1a();
        assert_eq!(
            g.ancestors(&set(&g, &["Y"])),
            set(&g, &["Y", "X", "B", "Z", "A", "I"])
        );
        assert_eq!(g.poss_de(&set(&g, &["X"])), set(&g, &["X", "Y"]));
        let g6 = fixtures::fig6a();
        assert_eq!(
            g6.descendants(&set(&g6, &["X1"])),
            set(&g6, &["X1", "V1", "V2", "X2", "Y2"])
        );
        let g4 = fixtures::fig4a();
        assert_eq!(g4.poss_de(&set(&g4, &["V3"])), set(&g4, &["V3", "V4", "X", "Y"]));
    }

    #[test]
    fn induced_subgraphs() {
        let g = fixtures::fig1a();
        let h = g.induced_subgraph(&set(&g, &["X", "Y"]));
        assert_eq!(h.n(), 2);
        assert_eq!(h.edges(), &[Edge::directed(0, 1)]);
        assert_eq!(g.induced_subgraph(&g.all_nodes()), g);
        let g8 = fixtures::fig8();
        let h = g8.induced_subgraph(&set(&g8, &["X1", "V1", "X2"]));
        let mut got: Vec<(String, String)> = h
            .edges()
            .iter()
            .map(|e| {
                let (t, hd) = e.as_directed().unwrap();
                (h.name(t).to_string(), h.name(hd).to_string())
            })
            .collect();
        got.sort();
        assert_eq!(got, vec![("V1".into(), "X1".into()), ("X2".into(), "V1".into())]);
    }

    #[test]
    fn moralization() {
        let v = MixedGraph::from_named_edges(
            GraphClass::Dag,
            &[("A", "C", Tail, Arrow), ("B", "C", Tail, Arrow)],
        )
        .unwrap();
        let m = v.moral_graph().unwrap();
        assert_eq!(m.edge_count(), 3);
        assert!(m.is_adjacent(0, 2));
        let chain = MixedGraph::from_named_edges(
            GraphClass::Dag,
            &[("A", "B", Tail, Arrow), ("B", "C", Tail, Arrow)],
        )
        .unwrap();
        assert_eq!(chain.moral_graph().unwrap().edge_count(), 2);
        assert_eq!(fixtures::fig1a().moral_graph(), Err(Error::NotADag));
    }

    #[test]
    fn topological_order_respects_edges() {
        let g = fixtures::fig7a();
        let order = g.topological_order();
        let pos: Vec<usize> = (0..g.n()).map(|v| order.iter().position(|&u| u == v).unwrap()).collect();
        for e in g.edges() {
            let (t, h) = e.as_directed().unwrap();
            assert!(pos[t] < pos[h]);
        }
    }
}
