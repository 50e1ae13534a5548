//! Paths, m-separation and possibly directed reachability.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{GraphClass, Mark, MixedGraph};
use crate::nodeset::{NodeId, NodeSet};

/// Default node cap for exhaustive path enumeration.
pub const PATH_NODE_LIMIT: usize = 16;
/// Default cap on the number of paths an enumeration may produce.
pub const PATH_COUNT_LIMIT: usize = 1_000_000;

/// Status of a node at a given position on a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeStatus {
    Endpoint,
    Collider,
    DefiniteNonCollider,
    NotDefinite,
}

/// Status of `v` on the subpath `prev - v - next`.
pub fn node_status(g: &MixedGraph, prev: NodeId, v: NodeId, next: NodeId) -> NodeStatus {
    let m1 = g.mark_at(v, prev).expect("prev adjacent to v");
    let m2 = g.mark_at(v, next).expect("next adjacent to v");
    if m1 == Mark::Arrow && m2 == Mark::Arrow {
        NodeStatus::Collider
    } else if m1 == Mark::Tail
        || m2 == Mark::Tail
        || (m1 == Mark::Circle && m2 == Mark::Circle && !g.is_adjacent(prev, next))
    {
        NodeStatus::DefiniteNonCollider
    } else {
        NodeStatus::NotDefinite
    }
}

/// A simple path, stored as its node sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    nodes: Vec<NodeId>,
}

impl Path {
    /// Checks that consecutive nodes are adjacent and no node repeats.
    pub fn new(g: &MixedGraph, nodes: Vec<NodeId>) -> Result<Path> {
        let mut seen = NodeSet::new();
        for (i, &v) in nodes.iter().enumerate() {
            if v >= g.n() {
                return Err(Error::NodeOutOfRange(v));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidArguments(format!("node `{}` repeats on path", g.name(v))));
            }
            if i > 0 && !g.is_adjacent(nodes[i - 1], v) {
                return Err(Error::InvalidArguments(format!(
                    "`{}` and `{}` are not adjacent",
                    g.name(nodes[i - 1]),
                    g.name(v)
                )));
            }
        }
        Ok(Path { nodes })
    }

    /// Resolves node names and builds a path.
    pub fn from_names(g: &MixedGraph, names: &[&str]) -> Result<Path> {
        let nodes = names
            .iter()
            .map(|s| g.id(s).ok_or_else(|| Error::UnknownNode(s.to_string())))
            .collect::<Result<_>>()?;
        Path::new(g, nodes)
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn first(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn last(&self) -> NodeId {
        *self.nodes.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.len() <= 1
    }

    pub fn statuses(&self, g: &MixedGraph) -> Vec<NodeStatus> {
        let k = self.nodes.len();
        (0..k)
            .map(|i| {
                if i == 0 || i + 1 == k {
                    NodeStatus::Endpoint
                } else {
                    node_status(g, self.nodes[i - 1], self.nodes[i], self.nodes[i + 1])
                }
            })
            .collect()
    }

    pub fn is_definite_status(&self, g: &MixedGraph) -> bool {
        !self.statuses(g).contains(&NodeStatus::NotDefinite)
    }

    /// No edge has an arrowhead pointing back towards the first node.
    pub fn is_possibly_directed(&self, g: &MixedGraph) -> bool {
        self.nodes
            .windows(2)
            .all(|w| g.mark_at(w[0], w[1]) != Some(Mark::Arrow))
    }

    /// Every edge is `->` pointing away from the first node.
    pub fn is_directed(&self, g: &MixedGraph) -> bool {
        self.nodes.windows(2).all(|w| g.has_directed(w[0], w[1]))
    }

    pub fn colliders(&self, g: &MixedGraph) -> Vec<NodeId> {
        self.statuses(g)
            .iter()
            .zip(&self.nodes)
            .filter(|(s, _)| **s == NodeStatus::Collider)
            .map(|(_, &v)| v)
            .collect()
    }

    /// Human-readable form such as `X <-o V3 -> Y`.
    pub fn display<'a>(&'a self, g: &'a MixedGraph) -> PathDisplay<'a> {
        PathDisplay { path: self, g }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    g: &'a MixedGraph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (g, nodes) = (self.g, &self.path.nodes);
        write!(f, "{}", g.name(nodes[0]))?;
        for w in nodes.windows(2) {
            let left = match g.mark_at(w[0], w[1]).unwrap() {
                Mark::Tail => "",
                Mark::Arrow => "<",
                Mark::Circle => "o",
            };
            let right = match g.mark_at(w[1], w[0]).unwrap() {
                Mark::Tail => "",
                Mark::Arrow => ">",
                Mark::Circle => "o",
            };
            write!(f, " {left}-{right} {}", g.name(w[1]))?;
        }
        Ok(())
    }
}

/// Counters from one run of the separation test.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TraversalStats {
    /// Distinct `(node, arrived-with-arrowhead)` states expanded.
    pub states: usize,
    /// Adjacency entries inspected while expanding states.
    pub edge_visits: usize,
    /// Adjacency entries inspected by the ancestor precompute.
    pub ancestor_visits: usize,
}

fn check_disjoint(x: &NodeSet, y: &NodeSet, z: &NodeSet) -> Result<()> {
    if !x.is_disjoint(y) || !x.is_disjoint(z) || !y.is_disjoint(z) {
        return Err(Error::InvalidArguments("X, Y and Z must be pairwise disjoint".into()));
    }
    Ok(())
}

/// True iff some path between `x` and `y` is m-connecting given `z`.
///
/// Only defined for graphs without circle marks.
pub fn m_connected(g: &MixedGraph, x: &NodeSet, y: &NodeSet, z: &NodeSet) -> Result<bool> {
    m_connected_with_stats(g, x, y, z).map(|(c, _)| c)
}

/// [`m_connected`] plus work counters.
pub fn m_connected_with_stats(
    g: &MixedGraph,
    x: &NodeSet,
    y: &NodeSet,
    z: &NodeSet,
) -> Result<(bool, TraversalStats)> {
    if g.class().is_partial() {
        return Err(Error::ClassUnsupported { op: "m_connected", class: g.class() });
    }
    check_disjoint(x, y, z)?;
    let mut stats = TraversalStats::default();
    let an_z = ancestors_counted(g, z, &mut stats.ancestor_visits);
    let c = bayes_ball(g, x, y, z, &an_z, &mut stats);
    Ok((c, stats))
}

fn ancestors_counted(g: &MixedGraph, s: &NodeSet, visits: &mut usize) -> NodeSet {
    let mut out = s.clone();
    let mut queue: Vec<NodeId> = s.iter().collect();
    while let Some(v) = queue.pop() {
        for a in g.adjacencies(v) {
            *visits += 1;
            if a.here == Mark::Arrow && a.there == Mark::Tail && out.insert(a.node) {
                queue.push(a.node);
            }
        }
    }
    out
}

/// Reachability over `(node, arrived with arrowhead)` states. Colliders pass
/// iff they are in `an_z`; other nodes pass iff they are not in `z`.
pub(crate) fn bayes_ball(
    g: &MixedGraph,
    x: &NodeSet,
    y: &NodeSet,
    z: &NodeSet,
    an_z: &NodeSet,
    stats: &mut TraversalStats,
) -> bool {
    let n = g.n();
    let mut seen = vec![[false; 2]; n];
    let mut queue: VecDeque<(NodeId, bool)> = VecDeque::new();
    for s in x {
        stats.states += 1;
        for a in g.adjacencies(s) {
            stats.edge_visits += 1;
            let into = a.there == Mark::Arrow;
            if !seen[a.node][into as usize] {
                seen[a.node][into as usize] = true;
                queue.push_back((a.node, into));
            }
        }
    }
    while let Some((v, into)) = queue.pop_front() {
        if y.contains(v) {
            return true;
        }
        if x.contains(v) {
            // Any continuation is also reachable from v itself.
            continue;
        }
        stats.states += 1;
        for a in g.adjacencies(v) {
            stats.edge_visits += 1;
            let collider = into && a.here == Mark::Arrow;
            let pass = if collider { an_z.contains(v) } else { !z.contains(v) };
            if !pass {
                continue;
            }
            let next_into = a.there == Mark::Arrow;
            if !seen[a.node][next_into as usize] {
                seen[a.node][next_into as usize] = true;
                queue.push_back((a.node, next_into));
            }
        }
    }
    false
}

/// Separation through the moral graph of the ancestral subgraph. Returns
/// true when `z` d-separates `x` and `y`. Meant as an independent check of
/// [`m_connected`] on DAGs.
pub fn d_sep_moral_oracle(dag: &MixedGraph, x: &NodeSet, y: &NodeSet, z: &NodeSet) -> Result<bool> {
    if dag.class() != GraphClass::Dag {
        return Err(Error::NotADag);
    }
    check_disjoint(x, y, z)?;
    let keep = dag.ancestors(&x.union(y).union(z));
    let moral = dag.induced_subgraph(&keep).moral_graph()?;
    let old: Vec<NodeId> = keep.to_vec();
    let local = |s: &NodeSet| -> NodeSet {
        old.iter().enumerate().filter(|(_, v)| s.contains(**v)).map(|(i, _)| i).collect()
    };
    let (lx, ly, lz) = (local(x), local(y), local(z));
    let mut seen = lx.clone();
    let mut queue: Vec<NodeId> = lx.iter().collect();
    while let Some(v) = queue.pop() {
        if ly.contains(v) {
            return Ok(false);
        }
        for a in moral.adjacencies(v) {
            if !lz.contains(a.node) && seen.insert(a.node) {
                queue.push(a.node);
            }
        }
    }
    Ok(true)
}

/// Lazily enumerates the definite-status paths from `x` to `y`.
///
/// With `proper` set, no node after the first lies in `x`. Paths may pass
/// through `y` nodes before ending at another one.
pub fn enumerate_definite_status_paths<'g>(
    g: &'g MixedGraph,
    x: &NodeSet,
    y: &NodeSet,
    proper: bool,
) -> Result<PathIter<'g>> {
    if g.n() > PATH_NODE_LIMIT {
        return Err(Error::GraphTooLarge { nodes: g.n(), limit: PATH_NODE_LIMIT });
    }
    Ok(PathIter {
        g,
        x: x.clone(),
        y: y.clone(),
        proper,
        roots: x.to_vec().into_iter().rev().collect(),
        stack: Vec::new(),
        on_path: NodeSet::new(),
        produced: 0,
        limit: PATH_COUNT_LIMIT,
        failed: false,
    })
}

/// Iterator returned by [`enumerate_definite_status_paths`].
pub struct PathIter<'g> {
    g: &'g MixedGraph,
    x: NodeSet,
    y: NodeSet,
    proper: bool,
    roots: Vec<NodeId>,
    stack: Vec<(NodeId, usize)>,
    on_path: NodeSet,
    produced: usize,
    limit: usize,
    failed: bool,
}

impl PathIter<'_> {
    /// Overrides the path-count cap.
    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }
}

impl Iterator for PathIter<'_> {
    type Item = Result<Path>;

    fn next(&mut self) -> Option<Result<Path>> {
        if self.failed {
            return None;
        }
        loop {
            let Some(&(v, i)) = self.stack.last() else {
                let r = self.roots.pop()?;
                self.stack.push((r, 0));
                self.on_path.insert(r);
                continue;
            };
            let adj = self.g.adjacencies(v);
            if i >= adj.len() {
                self.stack.pop();
                self.on_path.remove(v);
                continue;
            }
            self.stack.last_mut().unwrap().1 += 1;
            let w = adj[i].node;
            if self.on_path.contains(w) || (self.proper && self.x.contains(w)) {
                continue;
            }
            if self.stack.len() >= 2 {
                let prev = self.stack[self.stack.len() - 2].0;
                if node_status(self.g, prev, v, w) == NodeStatus::NotDefinite {
                    continue;
                }
            }
            self.stack.push((w, 0));
            self.on_path.insert(w);
            if self.y.contains(w) {
                self.produced += 1;
                if self.produced > self.limit {
                    self.failed = true;
                    return Some(Err(Error::PathLimitExceeded(self.limit)));
                }
                return Some(Ok(Path { nodes: self.stack.iter().map(|s| s.0).collect() }));
            }
        }
    }
}

/// True iff `z` blocks the definite-status path `p`: some definite
/// non-collider is in `z`, or some collider has no descendant in `z`.
pub fn is_blocked(p: &Path, z: &NodeSet, g: &MixedGraph) -> Result<bool> {
    let statuses = p.statuses(g);
    if statuses.contains(&NodeStatus::NotDefinite) {
        return Err(Error::NotDefiniteStatus);
    }
    for (&v, s) in p.nodes.iter().zip(&statuses) {
        match s {
            NodeStatus::Collider => {
                if g.descendants(&NodeSet::singleton(v)).is_disjoint(z) {
                    return Ok(true);
                }
            }
            NodeStatus::DefiniteNonCollider if z.contains(v) => return Ok(true),
            _ => {}
        }
    }
    Ok(false)
}

/// Nodes from which some node of `targets` is reachable along a possibly
/// directed path whose nodes all avoid `avoid`.
pub(crate) fn pd_reaches(g: &MixedGraph, targets: &NodeSet, avoid: &NodeSet) -> NodeSet {
    let mut out = targets.difference(avoid);
    let mut queue: Vec<NodeId> = out.iter().collect();
    while let Some(u) = queue.pop() {
        for a in g.adjacencies(u) {
            if a.there != Mark::Arrow && !avoid.contains(a.node) && out.insert(a.node) {
                queue.push(a.node);
            }
        }
    }
    out
}

/// Nodes outside `x` reachable from `x` by possibly directed paths that do
/// not return to `x`.
fn pd_reached_from(g: &MixedGraph, x: &NodeSet) -> NodeSet {
    let mut out = NodeSet::new();
    let mut queue: Vec<NodeId> = x.iter().collect();
    while let Some(u) = queue.pop() {
        for a in g.adjacencies(u) {
            if a.here != Mark::Arrow && !x.contains(a.node) && out.insert(a.node) {
                queue.push(a.node);
            }
        }
    }
    out
}

/// Shortest possibly directed path from `start` to some node of `targets`
/// avoiding `avoid` (the start itself is exempt).
pub(crate) fn pd_path(
    g: &MixedGraph,
    start: NodeId,
    targets: &NodeSet,
    avoid: &NodeSet,
) -> Option<Vec<NodeId>> {
    bfs_path(g, start, targets, |_, a| a.here != Mark::Arrow && !avoid.contains(a.node))
}

/// Shortest directed path from `start` to some node of `targets`.
pub(crate) fn directed_path(g: &MixedGraph, start: NodeId, targets: &NodeSet) -> Option<Vec<NodeId>> {
    bfs_path(g, start, targets, |_, a| a.here == Mark::Tail && a.there == Mark::Arrow)
}

fn bfs_path(
    g: &MixedGraph,
    start: NodeId,
    targets: &NodeSet,
    step: impl Fn(NodeId, &crate::graph::Adj) -> bool,
) -> Option<Vec<NodeId>> {
    let mut prev = vec![usize::MAX; g.n()];
    let mut seen = NodeSet::singleton(start);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        if targets.contains(u) {
            let mut path = vec![u];
            let mut v = u;
            while v != start {
                v = prev[v];
                path.push(v);
            }
            path.reverse();
            return Some(path);
        }
        for a in g.adjacencies(u) {
            if step(u, a) && seen.insert(a.node) {
                prev[a.node] = u;
                queue.push_back(a.node);
            }
        }
    }
    None
}

/// Nodes outside `x` on proper possibly directed walks from `x` to `y`,
/// computed by a forward and a backward sweep.
///
/// In DAGs and MAGs such walks are paths, so this is exactly the set of
/// nodes on proper possibly directed paths. With `o-o` edges a walk can
/// double back, and the result may contain extra nodes. Those are possible
/// descendants of the second node of the walk, which does lie on a proper
/// path, so the possible descendants of the result (the forbidden set) are
/// exact for every class.
pub fn proper_pdp_nodes(g: &MixedGraph, x: &NodeSet, y: &NodeSet) -> NodeSet {
    pd_reached_from(g, x).intersection(&pd_reaches(g, y, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::io::parse_graph;

    fn set(g: &MixedGraph, names: &[&str]) -> NodeSet {
        g.node_set(names).unwrap()
    }

    fn mc(g: &MixedGraph, x: &[&str], y: &[&str], z: &[&str]) -> bool {
        m_connected(g, &set(g, x), &set(g, y), &set(g, z)).unwrap()
    }

    #[test]
    fn m_connection_examples() {
        let g6 = fixtures::fig6a();
        assert!(mc(&g6, &["X2"], &["Y1"], &[]));
        let g5 = fixtures::fig5();
        assert!(mc(&g5, &["X1"], &["Y"], &["V2"]));
        let two = parse_graph("type: dag\nA -> B\nC -> D\n").unwrap();
        assert!(!mc(&two, &["A"], &["D"], &[]));
        let chain = parse_graph("type: dag\nX -> Z\nZ -> Y\n").unwrap();
        assert!(!mc(&chain, &["X"], &["Y"], &["Z"]));
        let v = parse_graph("type: dag\nX -> C\nY -> C\nC -> D\n").unwrap();
        assert!(!mc(&v, &["X"], &["Y"], &[]));
        assert!(mc(&v, &["X"], &["Y"], &["C"]));
        assert!(mc(&v, &["X"], &["Y"], &["D"]));
        assert!(m_connected(&fixtures::fig1a(), &NodeSet::new(), &NodeSet::new(), &NodeSet::new()).is_err());
    }

    #[test]
    fn moral_oracle_examples() {
        let chain = parse_graph("type: dag\nX -> Z\nZ -> Y\n").unwrap();
        assert!(d_sep_moral_oracle(&chain, &set(&chain, &["X"]), &set(&chain, &["Y"]), &set(&chain, &["Z"])).unwrap());
        let v = parse_graph("type: dag\nX -> C\nY -> C\n").unwrap();
        assert!(!d_sep_moral_oracle(&v, &set(&v, &["X"]), &set(&v, &["Y"]), &set(&v, &["C"])).unwrap());
    }

    fn path_strings(g: &MixedGraph, x: &[&str], y: &[&str], proper: bool) -> Vec<String> {
        enumerate_definite_status_paths(g, &set(g, x), &set(g, y), proper)
            .unwrap()
            .map(|p| p.unwrap().display(g).to_string())
            .collect()
    }

    #[test]
    fn fig4a_definite_status_paths() {
        let g = fixtures::fig4a();
        let all = enumerate_definite_status_paths(&g, &set(&g, &["X"]), &set(&g, &["Y"]), true).unwrap();
        let mut non_causal: Vec<String> = all
            .map(|p| p.unwrap())
            .filter(|p| !p.is_possibly_directed(&g))
            .map(|p| p.display(&g).to_string())
            .collect();
        non_causal.sort();
        assert_eq!(non_causal, vec!["X -> V4 <- V3 -> Y", "X <-o V3 -> Y"]);
        let p = Path::from_names(&g, &["X", "V3", "V4", "Y"]).unwrap();
        assert!(!p.is_definite_status(&g));
        assert_eq!(is_blocked(&p, &NodeSet::new(), &g), Err(Error::NotDefiniteStatus));
    }

    #[test]
    fn single_edge_has_one_path() {
        let g = parse_graph("type: dag\nX -> Y\n").unwrap();
        assert_eq!(path_strings(&g, &["X"], &["Y"], true), vec!["X -> Y"]);
    }

    #[test]
    fn blocking_examples() {
        let g = fixtures::fig4a();
        let p = Path::from_names(&g, &["X", "V3", "Y"]).unwrap();
        assert!(is_blocked(&p, &set(&g, &["V3"]), &g).unwrap());
        assert!(!is_blocked(&p, &NodeSet::new(), &g).unwrap());
        let v = parse_graph("type: dag\nX -> C\nY -> C\n").unwrap();
        let p = Path::from_names(&v, &["X", "C", "Y"]).unwrap();
        assert!(is_blocked(&p, &NodeSet::new(), &v).unwrap());
        let g = fixtures::fig4b();
        let p = Path::from_names(&g, &["X", "V3", "V4", "Y"]).unwrap();
        assert!(!is_blocked(&p, &set(&g, &["V1", "V2", "V3"]), &g).unwrap());
    }

    #[test]
    fn proper_pdp_examples() {
        let g = fixtures::fig1a();
        assert_eq!(proper_pdp_nodes(&g, &set(&g, &["X"]), &set(&g, &["Y"])), set(&g, &["Y"]));
        let g = fixtures::fig6b();
        assert_eq!(
            proper_pdp_nodes(&g, &set(&g, &["X1", "X2"]), &set(&g, &["Y1", "Y2"])),
            set(&g, &["Y1", "Y2"])
        );
        let g = parse_graph("type: dag\nA -> X\nA -> Y\n").unwrap();
        assert!(proper_pdp_nodes(&g, &set(&g, &["X"]), &set(&g, &["Y"])).is_empty());
    }

    #[test]
    fn path_display() {
        let g = fixtures::fig3a();
        let p = Path::from_names(&g, &["V1", "X", "Y"]).unwrap();
        assert_eq!(p.display(&g).to_string(), "V1 o-o X o-o Y");
        let g = fixtures::fig4b();
        let p = Path::from_names(&g, &["X", "V3", "V4", "Y"]).unwrap();
        assert_eq!(p.display(&g).to_string(), "X <-> V3 <-> V4 -> Y");
    }

    #[test]
    fn path_limit() {
        let g = parse_graph("type: dag\nX -> A\nX -> B\nA -> Y\nB -> Y\n").unwrap();
        let it = enumerate_definite_status_paths(&g, &set(&g, &["X"]), &set(&g, &["Y"]), true)
            .unwrap()
            .with_limit(1);
        let out: Vec<_> = it.collect();
        assert_eq!(out.len(), 2);
        assert_eq!(out[1], Err(Error::PathLimitExceeded(1)));
    }
}
