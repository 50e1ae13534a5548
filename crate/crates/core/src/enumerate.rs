//! Listing all (or all minimal) adjustment sets.
//!
//! After the amenability gate and the forbidden set, the GAC reduces to
//! m-separation in one fixed graph `h` (the separation graph). Sets `Z` with
//! `I ⊆ Z ⊆ R` that separate `X` and `Y` in `h` exist iff the canonical
//! candidate `An(X ∪ Y ∪ I) ∩ R` does. Backtracking over the free nodes with
//! that test as the pruning oracle abandons a dead branch after one test, so
//! the work between two outputs is a constant number of separation tests per
//! level.

use crate::adjustment::{amenability_violation, forbidden_set, separation_graph};
use crate::error::{Error, Result};
use crate::graph::MixedGraph;
use crate::nodeset::{NodeId, NodeSet};
use crate::reach::m_connected;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EnumConstraints {
    /// Nodes every listed set must contain.
    pub must_include: NodeSet,
    /// Nodes a listed set may contain. `None` means every node outside
    /// `X ∪ Y ∪ Forb`. Forbidden nodes, `X` and `Y` are always removed.
    pub allowed: Option<NodeSet>,
    /// List only sets from which no node outside `must_include` can be
    /// dropped.
    pub minimal_only: bool,
    /// Stop after this many sets; 0 means no limit.
    pub limit: usize,
}

/// Whether some `Z` with `i ⊆ Z ⊆ r` m-separates `x` and `y` in `h`.
/// `h` must be a DAG or MAG and `i ⊆ r`.
pub fn exists_with_constraints(
    h: &MixedGraph,
    x: &NodeSet,
    y: &NodeSet,
    i: &NodeSet,
    r: &NodeSet,
) -> Result<bool> {
    let candidate = h.ancestors(&x.union(y).union(i)).intersection(r);
    Ok(!m_connected(h, x, y, &candidate)?)
}

/// Lazily lists the sets satisfying the generalized adjustment criterion
/// under `c`, in ascending order of their bitmask (the highest node index
/// decides first).
///
/// Fails with [`Error::NotAmenable`] when no set can exist for that reason,
/// so an empty listing always means the blocking condition is unsatisfiable.
pub fn list_adjustment_sets(
    g: &MixedGraph,
    x: &NodeSet,
    y: &NodeSet,
    c: &EnumConstraints,
) -> Result<AdjustmentSets> {
    if let Some(p) = amenability_violation(g, x, y)? {
        return Err(Error::NotAmenable(p.display(g).to_string()));
    }
    let excluded = x.union(y).union(&forbidden_set(g, x, y));
    let r = c.allowed.clone().unwrap_or_else(|| g.all_nodes()).difference(&excluded);
    if let Some(v) = c.must_include.iter().find(|&v| !r.contains(v)) {
        return Err(Error::InvalidConstraints(format!(
            "`{}` must be included but is not allowed",
            g.name(v)
        )));
    }
    let h = separation_graph(g, x, y)?;
    let r = if c.minimal_only {
        // Every minimal set lies inside this ancestor set: intersecting a
        // valid set with it keeps it valid.
        r.intersection(&h.ancestors(&x.union(y).union(&c.must_include)))
    } else {
        r
    };
    let mut free: Vec<NodeId> = r.difference(&c.must_include).to_vec();
    free.reverse();
    Ok(AdjustmentSets {
        h,
        x: x.clone(),
        y: y.clone(),
        must_include: c.must_include.clone(),
        free,
        stack: vec![Frame { i: c.must_include.clone(), r, depth: 0 }],
        minimal_only: c.minimal_only,
        limit: c.limit,
        yielded: 0,
        truncated: false,
        tests: 0,
        tests_since_yield: 0,
        max_tests_between_yields: 0,
    })
}

struct Frame {
    i: NodeSet,
    r: NodeSet,
    depth: usize,
}

/// Iterator returned by [`list_adjustment_sets`].
pub struct AdjustmentSets {
    h: MixedGraph,
    x: NodeSet,
    y: NodeSet,
    must_include: NodeSet,
    free: Vec<NodeId>,
    stack: Vec<Frame>,
    minimal_only: bool,
    limit: usize,
    yielded: usize,
    truncated: bool,
    tests: usize,
    tests_since_yield: usize,
    max_tests_between_yields: usize,
}

impl AdjustmentSets {
    /// The graph the separation tests run in.
    pub fn separation_graph(&self) -> &MixedGraph {
        &self.h
    }

    /// Whether the listing stopped at the limit with more sets remaining.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// Separation tests run so far.
    pub fn separation_tests(&self) -> usize {
        self.tests
    }

    /// Largest number of separation tests between two consecutive outputs
    /// (or before the first). Not meaningful in minimal mode, where outputs
    /// are filtered.
    pub fn max_tests_between_yields(&self) -> usize {
        self.max_tests_between_yields
    }

    /// Number of free nodes the backtracking branches on.
    pub fn depth(&self) -> usize {
        self.free.len()
    }

    fn exists(&mut self, i: &NodeSet, r: &NodeSet) -> bool {
        self.tests += 1;
        self.tests_since_yield += 1;
        exists_with_constraints(&self.h, &self.x, &self.y, i, r).expect("sets are disjoint")
    }

    fn is_minimal(&mut self, z: &NodeSet) -> bool {
        for v in z.difference(&self.must_include) {
            let mut smaller = z.clone();
            smaller.remove(v);
            if self.exists(&self.must_include.clone(), &smaller) {
                return false;
            }
        }
        true
    }

    fn next_set(&mut self) -> Option<NodeSet> {
        while let Some(Frame { i, r, depth }) = self.stack.pop() {
            if !self.exists(&i, &r) {
                continue;
            }
            if depth == self.free.len() {
                debug_assert_eq!(i, r);
                if self.minimal_only && !self.is_minimal(&i) {
                    continue;
                }
                return Some(i);
            }
            let v = self.free[depth];
            let mut with = i.clone();
            with.insert(v);
            let mut without = r.clone();
            without.remove(v);
            self.stack.push(Frame { i: with, r: r.clone(), depth: depth + 1 });
            self.stack.push(Frame { i, r: without, depth: depth + 1 });
        }
        None
    }
}

impl Iterator for AdjustmentSets {
    type Item = NodeSet;

    fn next(&mut self) -> Option<NodeSet> {
        if self.truncated {
            return None;
        }
        let z = self.next_set();
        self.max_tests_between_yields = self.max_tests_between_yields.max(self.tests_since_yield);
        self.tests_since_yield = 0;
        let z = z?;
        if self.limit > 0 && self.yielded == self.limit {
            self.truncated = true;
            return None;
        }
        self.yielded += 1;
        Some(z)
    }
}
