//! Adjustment criteria: amenability, the forbidden set, the generalized
//! adjustment criterion (GAC), the generalized back-door criterion (GBC),
//! Pearl's back-door criterion (BC), constructive sets and diagnosis.

use crate::error::{Error, Result};
use crate::graph::{GraphClass, Mark, MixedGraph};
use crate::nodeset::{NodeId, NodeSet};
use crate::orientation::{orient_avoiding_into, orient_to_representative};
use crate::reach::{
    self, bayes_ball, enumerate_definite_status_paths, is_blocked, m_connected, pd_path,
    pd_reaches, proper_pdp_nodes, Path, TraversalStats, PATH_NODE_LIMIT,
};
use crate::visibility::{is_visible, visible_out_edges};

/// Which GAC condition a rejected set fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailedCondition {
    Amenability,
    ForbiddenSet,
    Blocking,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Path(Path),
    Nodes(NodeSet),
}

/// Outcome of a GAC check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub ok: bool,
    pub failed_condition: Option<FailedCondition>,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn pass() -> Verdict {
        Verdict { ok: true, failed_condition: None, witness: None }
    }

    fn fail(cond: FailedCondition, witness: Option<Witness>) -> Verdict {
        Verdict { ok: false, failed_condition: Some(cond), witness }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    /// Generalized adjustment criterion.
    Gac,
    /// Generalized back-door criterion.
    Gbc,
    /// Pearl's back-door criterion (DAGs only).
    Bc,
}

/// Graphical reasons for the absence of a set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    /// The graph is not amenable.
    P1,
    /// Amenable, but some non-causal path cannot be blocked without
    /// forbidden nodes.
    P2,
    /// A GAC set exists but every one needs a possible descendant of X.
    P3,
    /// A GBC set exists but no BC set does.
    P4,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionDiagnosis {
    pub criterion: Criterion,
    pub exists: bool,
    pub triggered: Vec<Pattern>,
}

/// Sufficient conditions that can be read off the graph directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hint {
    /// Amenable and X meets the forbidden set, so no adjustment set exists.
    ExposureForbidden,
    /// DAG or CPDAG with Y among the possible descendants of X: a set exists
    /// iff X does not meet the forbidden set.
    ForbiddenCharacterizes,
    /// DAG without directed paths between exposures: GAC and BC sets exist
    /// together.
    GacIffBc,
    /// No possibly directed path leaves X and re-enters it (or DAG/CPDAG
    /// with Y among the possible descendants): GAC and GBC sets exist
    /// together.
    GacIffGbc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnosis {
    pub amenable: bool,
    /// GAC, GBC and, for DAGs, BC.
    pub criteria: Vec<CriterionDiagnosis>,
    pub hints: Vec<Hint>,
}

impl Diagnosis {
    pub fn get(&self, c: Criterion) -> Option<&CriterionDiagnosis> {
        self.criteria.iter().find(|d| d.criterion == c)
    }

    pub fn exists(&self, c: Criterion) -> Option<bool> {
        self.get(c).map(|d| d.exists)
    }
}

fn check_xy(g: &MixedGraph, x: &NodeSet, y: &NodeSet) -> Result<()> {
    let n = g.n();
    if let Some(v) = x.union(y).iter().find(|&v| v >= n) {
        return Err(Error::NodeOutOfRange(v));
    }
    if x.is_empty() || y.is_empty() {
        return Err(Error::InvalidArguments("X and Y must be non-empty".into()));
    }
    if !x.is_disjoint(y) {
        return Err(Error::InvalidArguments("X and Y must be disjoint".into()));
    }
    Ok(())
}

fn check_xyz(g: &MixedGraph, x: &NodeSet, y: &NodeSet, z: &NodeSet) -> Result<()> {
    check_xy(g, x, y)?;
    if let Some(v) = z.iter().find(|&v| v >= g.n()) {
        return Err(Error::NodeOutOfRange(v));
    }
    if !z.is_disjoint(&x.union(y)) {
        return Err(Error::InvalidArguments("Z must be disjoint from X and Y".into()));
    }
    Ok(())
}

fn is_visible_directed(g: &MixedGraph, t: NodeId, h: NodeId) -> bool {
    is_visible(g, t, h).unwrap_or(false)
}

/// A proper possibly directed path from `x` to `y` that does not start with
/// a visible edge out of `x`, if one exists.
pub fn amenability_violation(g: &MixedGraph, x: &NodeSet, y: &NodeSet) -> Result<Option<Path>> {
    check_xy(g, x, y)?;
    let reaches = pd_reaches(g, y, x);
    let mut best: Option<Vec<NodeId>> = None;
    for s in x {
        for a in g.adjacencies(s) {
            if a.here == Mark::Arrow || x.contains(a.node) || !reaches.contains(a.node) {
                continue;
            }
            let visible = a.here == Mark::Tail
                && a.there == Mark::Arrow
                && is_visible_directed(g, s, a.node);
            if !visible {
                let rest = pd_path(g, a.node, y, x).expect("node reaches Y");
                if best.as_ref().is_none_or(|b| rest.len() + 1 < b.len()) {
                    let mut nodes = vec![s];
                    nodes.extend(rest);
                    best = Some(nodes);
                }
            }
        }
    }
    // Shortest witness, for readability.
    best.map(|nodes| Path::new(g, nodes)).transpose()
}

/// Whether every proper possibly directed path from `x` to `y` starts with a
/// visible edge out of `x`.
pub fn amenable(g: &MixedGraph, x: &NodeSet, y: &NodeSet) -> Result<bool> {
    Ok(amenability_violation(g, x, y)?.is_none())
}

/// Possible descendants of the non-`x` nodes on proper possibly directed
/// paths from `x` to `y`.
pub fn forbidden_set(g: &MixedGraph, x: &NodeSet, y: &NodeSet) -> NodeSet {
    g.poss_de(&proper_pdp_nodes(g, x, y))
}

/// `g` without the visible edges out of `x` that start a proper possibly
/// directed path to `y`.
pub fn proper_backdoor_graph(g: &MixedGraph, x: &NodeSet, y: &NodeSet) -> MixedGraph {
    let reaches = pd_reaches(g, y, x);
    let drop: Vec<_> = visible_out_edges(g, x)
        .into_iter()
        .filter(|e| {
            let (_, h) = e.as_directed().unwrap();
            reaches.contains(h)
        })
        .collect();
    g.without_edges(|e| drop.contains(e))
}

/// `PossAn(X ∪ Y) \ (X ∪ Y ∪ Forb)`.
pub fn adjust_set(g: &MixedGraph, x: &NodeSet, y: &NodeSet) -> NodeSet {
    let xy = x.union(y);
    g.poss_an(&xy).difference(&xy).difference(&forbidden_set(g, x, y))
}

/// The graph in which the GAC separation test runs: the proper back-door
/// graph of `g`, after orienting `g` to a representative if it has circles.
pub fn separation_graph(g: &MixedGraph, x: &NodeSet, y: &NodeSet) -> Result<MixedGraph> {
    let rep = orient_to_representative(g)?;
    Ok(proper_backdoor_graph(&rep, x, y))
}

/// Checks the generalized adjustment criterion. Blocking is decided by
/// m-separation in [`separation_graph`].
pub fn gac_verify(g: &MixedGraph, x: &NodeSet, y: &NodeSet, z: &NodeSet) -> Result<Verdict> {
    gac_verify_with_stats(g, x, y, z).map(|(v, _)| v)
}

/// [`gac_verify`] plus the counters of the separation test, if it ran.
pub fn gac_verify_with_stats(
    g: &MixedGraph,
    x: &NodeSet,
    y: &NodeSet,
    z: &NodeSet,
) -> Result<(Verdict, Option<TraversalStats>)> {
    check_xyz(g, x, y, z)?;
    if let Some(p) = amenability_violation(g, x, y)? {
        return Ok((Verdict::fail(FailedCondition::Amenability, Some(Witness::Path(p))), None));
    }
    let bad = z.intersection(&forbidden_set(g, x, y));
    if !bad.is_empty() {
        return Ok((Verdict::fail(FailedCondition::ForbiddenSet, Some(Witness::Nodes(bad))), None));
    }
    let h = separation_graph(g, x, y)?;
    let (connected, stats) = reach::m_connected_with_stats(&h, x, y, z)?;
    if connected {
        let witness = if g.n() <= PATH_NODE_LIMIT {
            unblocked_noncausal_path(g, x, y, z).ok().flatten().map(Witness::Path)
        } else {
            None
        };
        return Ok((Verdict::fail(FailedCondition::Blocking, witness), Some(stats)));
    }
    Ok((Verdict::pass(), Some(stats)))
}

/// The first proper definite-status non-causal path from `x` to `y` that
/// `z` does not block, by exhaustive enumeration.
pub fn unblocked_noncausal_path(
    g: &MixedGraph,
    x: &NodeSet,
    y: &NodeSet,
    z: &NodeSet,
) -> Result<Option<Path>> {
    for p in enumerate_definite_status_paths(g, x, y, true)? {
        let p = p?;
        if !p.is_possibly_directed(g) && !is_blocked(&p, z, g)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// The generalized adjustment criterion checked literally: blocking is
/// decided path by path. Exponential; limited to small graphs.
pub fn gac_verify_by_paths(g: &MixedGraph, x: &NodeSet, y: &NodeSet, z: &NodeSet) -> Result<Verdict> {
    check_xyz(g, x, y, z)?;
    if let Some(p) = amenability_violation(g, x, y)? {
        return Ok(Verdict::fail(FailedCondition::Amenability, Some(Witness::Path(p))));
    }
    let bad = z.intersection(&forbidden_set(g, x, y));
    if !bad.is_empty() {
        return Ok(Verdict::fail(FailedCondition::ForbiddenSet, Some(Witness::Nodes(bad))));
    }
    match unblocked_noncausal_path(g, x, y, z)? {
        Some(p) => Ok(Verdict::fail(FailedCondition::Blocking, Some(Witness::Path(p)))),
        None => Ok(Verdict::pass()),
    }
}

/// `Adjust \ I` if it satisfies the GAC. `i` must contain the forbidden set
/// and be closed under possible descendants; if the result is `None`, no
/// valid set disjoint from `i` exists.
pub fn constructive(g: &MixedGraph, x: &NodeSet, y: &NodeSet, i: &NodeSet) -> Result<Option<NodeSet>> {
    check_xy(g, x, y)?;
    if !forbidden_set(g, x, y).is_subset(i) {
        return Err(Error::NotSupersetOfForb);
    }
    if g.poss_de(i) != *i {
        return Err(Error::NotDescendral);
    }
    let candidate = adjust_set(g, x, y).difference(i);
    Ok(gac_verify(g, x, y, &candidate)?.ok.then_some(candidate))
}

/// The members of `x` that start a possibly directed path to `y` that is
/// proper with respect to `x`. The remaining exposures have no effect on `y`.
pub fn preprocess_exposures(g: &MixedGraph, x: &NodeSet, y: &NodeSet) -> Result<NodeSet> {
    check_xy(g, x, y)?;
    let reaches = pd_reaches(g, y, x);
    Ok(x.iter()
        .filter(|&s| {
            g.adjacencies(s).iter().any(|a| {
                a.here != Mark::Arrow && !x.contains(a.node) && reaches.contains(a.node)
            })
        })
        .collect())
}

/// Pearl's back-door criterion for every pair in `x × y`.
pub fn backdoor_verify(dag: &MixedGraph, x: &NodeSet, y: &NodeSet, z: &NodeSet) -> Result<bool> {
    if dag.class() != GraphClass::Dag {
        return Err(Error::NotADag);
    }
    check_xyz(dag, x, y, z)?;
    if !dag.descendants(x).is_disjoint(z) {
        return Ok(false);
    }
    for s in x {
        let h = dag.without_edges(|e| e.as_directed().map(|(t, _)| t) == Some(s));
        if m_connected(&h, &NodeSet::singleton(s), y, z)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The generalized back-door criterion. Condition (ii) is checked by path
/// enumeration on graphs with at most 16 nodes and by
/// [`gbc_separation_check`] on larger ones.
pub fn gbc_verify(g: &MixedGraph, x: &NodeSet, y: &NodeSet, z: &NodeSet) -> Result<bool> {
    check_xyz(g, x, y, z)?;
    if !g.poss_de(x).is_disjoint(z) {
        return Ok(false);
    }
    if g.n() <= PATH_NODE_LIMIT {
        gbc_path_check(g, x, y, z)
    } else {
        gbc_separation_check(g, x, y, z)
    }
}

/// Condition (ii) of the GBC by path enumeration: for each exposure `s`,
/// `Z ∪ X \ {s}` blocks every definite-status path from `s` to `y` that does
/// not start with a visible edge out of `s`.
pub fn gbc_path_check(g: &MixedGraph, x: &NodeSet, y: &NodeSet, z: &NodeSet) -> Result<bool> {
    for s in x {
        let mut cond = z.union(x);
        cond.remove(s);
        for p in enumerate_definite_status_paths(g, &NodeSet::singleton(s), y, false)? {
            let p = p?;
            let next = p.nodes()[1];
            if g.has_directed(s, next) && is_visible_directed(g, s, next) {
                continue;
            }
            if !is_blocked(&p, &cond, g)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Condition (ii) of the GBC as a separation test: for each exposure `s`,
/// `s` and `y` must be m-separated by `Z ∪ X \ {s}` once the visible edges
/// out of `s` are removed. Graphs with circle marks are first oriented so
/// that no circle edge points into `s`.
pub fn gbc_separation_check(g: &MixedGraph, x: &NodeSet, y: &NodeSet, z: &NodeSet) -> Result<bool> {
    for s in x {
        let mut cond = z.union(x);
        cond.remove(s);
        let drop = visible_out_edges(g, &NodeSet::singleton(s));
        let rep = orient_avoiding_into(g, s)?;
        let h = rep.without_edges(|e| drop.contains(e));
        let an = rep.ancestors(&cond);
        let mut stats = TraversalStats::default();
        if bayes_ball(&h, &NodeSet::singleton(s), y, &cond, &an, &mut stats) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Adjust \ De(X)` if it is a back-door set. `None` means no back-door set
/// exists.
pub fn constructive_backdoor(dag: &MixedGraph, x: &NodeSet, y: &NodeSet) -> Result<Option<NodeSet>> {
    if dag.class() != GraphClass::Dag {
        return Err(Error::NotADag);
    }
    check_xy(dag, x, y)?;
    let candidate = adjust_set(dag, x, y).difference(&dag.descendants(x));
    Ok(backdoor_verify(dag, x, y, &candidate)?.then_some(candidate))
}

/// `Adjust \ PossDe(X)` if the graph is amenable and it is a generalized
/// back-door set. `None` means no such set exists.
pub fn constructive_gbc(g: &MixedGraph, x: &NodeSet, y: &NodeSet) -> Result<Option<NodeSet>> {
    if !amenable(g, x, y)? {
        return Ok(None);
    }
    let candidate = adjust_set(g, x, y).difference(&g.poss_de(x));
    Ok(gbc_verify(g, x, y, &candidate)?.then_some(candidate))
}

/// Existence of GAC, GBC and BC sets with the patterns that explain the
/// missing ones.
pub fn diagnose(g: &MixedGraph, x: &NodeSet, y: &NodeSet) -> Result<Diagnosis> {
    check_xy(g, x, y)?;
    let is_amenable = amenable(g, x, y)?;
    let forb = forbidden_set(g, x, y);
    let gac = is_amenable && constructive(g, x, y, &forb)?.is_some();
    let gbc = constructive_gbc(g, x, y)?.is_some();

    let mut criteria = Vec::new();
    let gac_patterns = if !is_amenable {
        vec![Pattern::P1]
    } else if !gac {
        vec![Pattern::P2]
    } else {
        vec![]
    };
    let mut gbc_patterns = gac_patterns.clone();
    if gbc_patterns.is_empty() && !gbc {
        gbc_patterns.push(Pattern::P3);
    }
    criteria.push(CriterionDiagnosis { criterion: Criterion::Gac, exists: gac, triggered: gac_patterns });
    if g.class() == GraphClass::Dag {
        let bc = constructive_backdoor(g, x, y)?.is_some();
        let mut bc_patterns = gbc_patterns.clone();
        if bc_patterns.is_empty() && !bc {
            bc_patterns.push(Pattern::P4);
        }
        criteria.push(CriterionDiagnosis { criterion: Criterion::Gbc, exists: gbc, triggered: gbc_patterns });
        criteria.push(CriterionDiagnosis { criterion: Criterion::Bc, exists: bc, triggered: bc_patterns });
    } else {
        criteria.push(CriterionDiagnosis { criterion: Criterion::Gbc, exists: gbc, triggered: gbc_patterns });
    }

    let mut hints = Vec::new();
    if is_amenable && !x.is_disjoint(&forb) {
        hints.push(Hint::ExposureForbidden);
    }
    let y_below_x = matches!(g.class(), GraphClass::Dag | GraphClass::Cpdag) && y.is_subset(&g.poss_de(x));
    if y_below_x && is_amenable {
        hints.push(Hint::ForbiddenCharacterizes);
    }
    if g.class() == GraphClass::Dag
        && x.iter().all(|s| g.descendants(&NodeSet::singleton(s)).intersection(x) == NodeSet::singleton(s))
    {
        hints.push(Hint::GacIffBc);
    }
    if y_below_x || !reenters_x(g, x) {
        hints.push(Hint::GacIffGbc);
    }
    Ok(Diagnosis { amenable: is_amenable, criteria, hints })
}

/// Whether some possibly directed path of length at least two leaves one
/// exposure and ends at another with no exposure in between.
fn reenters_x(g: &MixedGraph, x: &NodeSet) -> bool {
    for s in x {
        let mut seen = NodeSet::new();
        let mut stack = Vec::new();
        for a in g.adjacencies(s) {
            if a.here != Mark::Arrow && !x.contains(a.node) && seen.insert(a.node) {
                stack.push(a.node);
            }
        }
        while let Some(v) = stack.pop() {
            for a in g.adjacencies(v) {
                if a.here == Mark::Arrow {
                    continue;
                }
                if x.contains(a.node) {
                    if a.node != s {
                        return true;
                    }
                } else if seen.insert(a.node) {
                    stack.push(a.node);
                }
            }
        }
    }
    false
}
