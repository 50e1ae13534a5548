//! Linear-Gaussian structural equation models as a numerical oracle.
//!
//! `V = A V + ε` with `ε ~ N(0, diag(ω))`. Interventional means follow from
//! the truncated model and adjusted estimates from Gaussian regression, both
//! in closed form, so a covariate set can be checked against ground truth
//! without sampling.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adjustment::{forbidden_set, gac_verify};
use crate::error::{Error, Result};
use crate::graph::{GraphClass, MixedGraph};
use crate::nodeset::{NodeId, NodeSet};
use crate::reach::{directed_path, enumerate_definite_status_paths, is_blocked, pd_path, proper_pdp_nodes, Path, PATH_NODE_LIMIT};

/// Largest graph [`LinearSem::wright_covariance`] accepts.
pub const WRIGHT_NODE_LIMIT: usize = 12;

/// Explained variance cap used when standardizing: coefficients into a node
/// are scaled down if its parents would explain more than this.
const MAX_EXPLAINED: f64 = 0.9;

const STANDARDIZED_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct LinearSem {
    dag: MixedGraph,
    /// `coef[(child, parent)]`.
    coef: DMatrix<f64>,
    resid_var: Vec<f64>,
}

fn check_dag(dag: &MixedGraph) -> Result<()> {
    if dag.class() != GraphClass::Dag {
        return Err(Error::NotADag);
    }
    Ok(())
}

fn coef_matrix(dag: &MixedGraph, coefs: &[(NodeId, NodeId, f64)]) -> Result<DMatrix<f64>> {
    let mut m = DMatrix::zeros(dag.n(), dag.n());
    for &(t, h, c) in coefs {
        if t >= dag.n() || h >= dag.n() || !dag.has_directed(t, h) {
            return Err(Error::InvalidArguments(format!("no edge {t} -> {h}")));
        }
        m[(h, t)] = c;
    }
    Ok(m)
}

impl LinearSem {
    /// A SEM with the given edge coefficients (missing edges get 0) and
    /// residual variances.
    pub fn new(dag: MixedGraph, coefs: &[(NodeId, NodeId, f64)], resid_var: Vec<f64>) -> Result<LinearSem> {
        check_dag(&dag)?;
        if resid_var.len() != dag.n() || resid_var.iter().any(|&w| w.is_nan() || w <= 0.0) {
            return Err(Error::InvalidArguments("residual variances must be positive, one per node".into()));
        }
        let coef = coef_matrix(&dag, coefs)?;
        Ok(LinearSem { dag, coef, resid_var })
    }

    /// A SEM in which every variable has variance 1. Residual variances are
    /// solved in topological order; where the parents would explain more
    /// than 90% of a node's variance, the coefficients into it are scaled
    /// down first.
    pub fn standardized(dag: MixedGraph, coefs: &[(NodeId, NodeId, f64)]) -> Result<LinearSem> {
        check_dag(&dag)?;
        let mut coef = coef_matrix(&dag, coefs)?;
        let n = dag.n();
        let mut cov = DMatrix::<f64>::zeros(n, n);
        let mut resid_var = vec![1.0; n];
        let mut done: Vec<NodeId> = Vec::with_capacity(n);
        for v in dag.topological_order() {
            let pa = dag.parents(&NodeSet::singleton(v)).to_vec();
            let mut explained = 0.0;
            for &p in &pa {
                for &q in &pa {
                    explained += coef[(v, p)] * coef[(v, q)] * cov[(p, q)];
                }
            }
            if explained > MAX_EXPLAINED {
                let s = (MAX_EXPLAINED / explained).sqrt();
                for &p in &pa {
                    coef[(v, p)] *= s;
                }
                explained = MAX_EXPLAINED;
            }
            resid_var[v] = 1.0 - explained;
            for &u in &done {
                let c: f64 = pa.iter().map(|&p| coef[(v, p)] * cov[(p, u)]).sum();
                cov[(v, u)] = c;
                cov[(u, v)] = c;
            }
            cov[(v, v)] = 1.0;
            done.push(v);
        }
        Ok(LinearSem { dag, coef, resid_var })
    }

    pub fn dag(&self) -> &MixedGraph {
        &self.dag
    }

    /// Coefficient of `tail` in the equation of `head` (0 if not adjacent).
    pub fn coef(&self, tail: NodeId, head: NodeId) -> f64 {
        self.coef[(head, tail)]
    }

    pub fn resid_var(&self, v: NodeId) -> f64 {
        self.resid_var[v]
    }

    /// `(I - A)^-1 Ω (I - A)^-T`.
    pub fn covariance(&self) -> Result<DMatrix<f64>> {
        let n = self.dag.n();
        let inv = (DMatrix::identity(n, n) - &self.coef)
            .try_inverse()
            .ok_or(Error::SingularSystem)?;
        let omega = DMatrix::from_diagonal(&DVector::from_vec(self.resid_var.clone()));
        Ok(&inv * omega * inv.transpose())
    }

    pub fn is_standardized(&self) -> bool {
        match self.covariance() {
            Ok(c) => (0..self.dag.n()).all(|v| (c[(v, v)] - 1.0).abs() < STANDARDIZED_TOL),
            Err(_) => false,
        }
    }

    /// Covariance of `i` and `j` by the path rule: the sum, over all paths
    /// between them without colliders, of the products of the edge
    /// coefficients. Exponential; only for standardized SEMs on at most 12
    /// nodes.
    pub fn wright_covariance(&self, i: NodeId, j: NodeId) -> Result<f64> {
        if self.dag.n() > WRIGHT_NODE_LIMIT {
            return Err(Error::GraphTooLarge { nodes: self.dag.n(), limit: WRIGHT_NODE_LIMIT });
        }
        if !self.is_standardized() {
            return Err(Error::NotStandardized);
        }
        if i == j {
            return Ok(1.0);
        }
        let mut total = 0.0;
        let mut on_path = NodeSet::singleton(i);
        self.wright_dfs(i, j, false, 1.0, &mut on_path, &mut total);
        Ok(total)
    }

    /// `into_here`: the edge used to reach `v` has its arrowhead at `v`.
    fn wright_dfs(&self, v: NodeId, target: NodeId, into_here: bool, prod: f64, on_path: &mut NodeSet, total: &mut f64) {
        if v == target {
            *total += prod;
            return;
        }
        for a in self.dag.adjacencies(v) {
            let w = a.node;
            if on_path.contains(w) {
                continue;
            }
            let leaves_by_arrow_here = a.here == crate::graph::Mark::Arrow;
            if into_here && leaves_by_arrow_here {
                continue; // collider at v
            }
            let c = if leaves_by_arrow_here { self.coef(w, v) } else { self.coef(v, w) };
            if c == 0.0 {
                continue;
            }
            on_path.insert(w);
            self.wright_dfs(w, target, !leaves_by_arrow_here, prod * c, on_path, total);
            on_path.remove(w);
        }
    }

    /// `E[Y | do(X = values)]`, with `values` in ascending order of `x`.
    pub fn do_effect(&self, x: &NodeSet, values: &[f64], y: NodeId) -> f64 {
        assert_eq!(x.len(), values.len(), "one value per exposure");
        let mut mean = vec![0.0; self.dag.n()];
        for (v, &val) in x.iter().zip(values) {
            mean[v] = val;
        }
        for v in self.dag.topological_order() {
            if x.contains(v) {
                continue;
            }
            mean[v] = (0..self.dag.n()).map(|p| self.coef[(v, p)] * mean[p]).sum();
        }
        mean[y]
    }

    /// `∫ E[Y | x, z] f(z) dz`: the coefficients of `x` in the regression of
    /// `y` on `x ∪ z`, applied to `values` (all means are zero).
    pub fn adjusted_estimate(&self, x: &NodeSet, values: &[f64], y: NodeId, z: &NodeSet) -> Result<f64> {
        assert_eq!(x.len(), values.len(), "one value per exposure");
        let cov = self.covariance()?;
        let s: Vec<NodeId> = x.union(z).to_vec();
        let k = s.len();
        let sigma_ss = DMatrix::from_fn(k, k, |a, b| cov[(s[a], s[b])]);
        let sigma_sy = DVector::from_fn(k, |a, _| cov[(s[a], y)]);
        let beta = sigma_ss.cholesky().ok_or(Error::SingularRegression)?.solve(&sigma_sy);
        let mut values = values.iter();
        Ok(s.iter()
            .enumerate()
            .filter(|(_, v)| x.contains(**v))
            .map(|(a, _)| beta[a] * values.next().unwrap())
            .sum())
    }
}

/// A SEM on `dag` with coefficients uniform in `[0.2, 0.8]`. Residual
/// variances are uniform in `[0.5, 1.5]`, or solved for unit variances when
/// `standardized` is set.
pub fn random_sem(dag: &MixedGraph, seed: u64, standardized: bool) -> Result<LinearSem> {
    check_dag(dag)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coefs: Vec<_> = dag
        .edges()
        .iter()
        .map(|e| {
            let (t, h) = e.as_directed().expect("DAG edge");
            (t, h, rng.gen_range(0.2..=0.8))
        })
        .collect();
    if standardized {
        LinearSem::standardized(dag.clone(), &coefs)
    } else {
        let resid = (0..dag.n()).map(|_| rng.gen_range(0.5..=1.5)).collect();
        LinearSem::new(dag.clone(), &coefs, resid)
    }
}

/// Which construction produced an adversarial SEM.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdversarialCase {
    /// An open non-causal path without colliders.
    ColliderFreePath,
    /// A member of Z on a proper causal path.
    MediatorInZ,
    /// A member of Z descending from an outcome.
    DescendantOfOutcome,
    /// A member of Z descending from a mediator.
    DescendantOfMediator,
    /// An open non-causal path whose colliders reach Z.
    ColliderPath,
    /// Every coefficient non-zero; used when no targeted shape applies.
    Generic,
}

/// A SEM on which adjusting for a rejected set gives the wrong answer.
#[derive(Debug, Clone)]
pub struct Adversarial {
    pub sem: LinearSem,
    pub case: AdversarialCase,
    /// The outcome whose estimate is wrong.
    pub target: NodeId,
    /// Intervention values, in ascending order of X.
    pub values: Vec<f64>,
    /// `|E[target | do(X = values)] - adjusted estimate|`.
    pub gap: f64,
}

/// Smallest gap [`adversarial_sem`] accepts.
pub const ADVERSARIAL_GAP: f64 = 1e-6;
const ADVERSARIAL_TRIES: usize = 100;

fn path_edges(path: &[NodeId]) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
    path.windows(2).map(|w| (w[0], w[1]))
}

/// For a set `z` the criterion rejects on `dag`, a standardized SEM under
/// which adjusting for `z` does not recover the causal effect of `x` on
/// some outcome. Only the coefficients on the witnessing paths are
/// non-zero. Returns `None` when `z` is a valid adjustment set.
pub fn adversarial_sem(dag: &MixedGraph, x: &NodeSet, y: &NodeSet, z: &NodeSet, seed: u64) -> Result<Option<Adversarial>> {
    check_dag(dag)?;
    if gac_verify(dag, x, y, z)?.ok {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (case, exposure, target, edges) in candidates(dag, x, y, z)? {
        let mut values = vec![0.0; x.len()];
        values[x.iter().position(|v| v == exposure).unwrap()] = 1.0;
        for _ in 0..ADVERSARIAL_TRIES {
            let coefs: Vec<_> = edges.iter().map(|&(a, b)| orient(dag, a, b, rng.gen_range(0.4..=0.7))).collect();
            let sem = LinearSem::standardized(dag.clone(), &coefs)?;
            let adjusted = match sem.adjusted_estimate(x, &values, target, z) {
                Ok(a) => a,
                Err(Error::SingularRegression) => continue,
                Err(e) => return Err(e),
            };
            let gap = (sem.do_effect(x, &values, target) - adjusted).abs();
            if gap > ADVERSARIAL_GAP {
                return Ok(Some(Adversarial { sem, case, target, values, gap }));
            }
        }
    }
    Err(Error::NoWitnessFound)
}

fn orient(dag: &MixedGraph, a: NodeId, b: NodeId, c: f64) -> (NodeId, NodeId, f64) {
    if dag.has_directed(a, b) {
        (a, b, c)
    } else {
        (b, a, c)
    }
}

type Candidate = (AdversarialCase, NodeId, NodeId, Vec<(NodeId, NodeId)>);

/// Witness shapes in order of preference, each with the exposure set to 1,
/// the outcome to compare and the edges that get non-zero coefficients.
fn candidates(dag: &MixedGraph, x: &NodeSet, y: &NodeSet, z: &NodeSet) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();

    // Blocking violations: open proper non-causal paths.
    if dag.n() <= PATH_NODE_LIMIT {
        let mut best: Option<(usize, Path)> = None;
        for p in enumerate_definite_status_paths(dag, x, y, true)?.with_limit(100_000) {
            let Ok(p) = p else { break };
            if p.is_possibly_directed(dag) || is_blocked(&p, z, dag)? {
                continue;
            }
            let key = p.colliders(dag).len();
            if best.as_ref().is_none_or(|(k, b)| (key, p.len()) < (*k, b.len())) {
                best = Some((key, p));
            }
        }
        if let Some((colliders, p)) = best {
            let mut edges: Vec<_> = path_edges(p.nodes()).collect();
            let case = if colliders == 0 {
                AdversarialCase::ColliderFreePath
            } else {
                for c in p.colliders(dag) {
                    let q = directed_path(dag, c, z).expect("collider reaches Z");
                    edges.extend(path_edges(&q));
                }
                AdversarialCase::ColliderPath
            };
            out.push((case, p.first(), p.last(), edges));
        }
    }

    // Forbidden-set violations.
    let forb = forbidden_set(dag, x, y);
    if !forb.is_disjoint(z) {
        let mediators = proper_pdp_nodes(dag, x, y);
        let causal_to = |t: NodeId| -> Option<Vec<NodeId>> {
            x.iter().filter_map(|s| pd_path(dag, s, &NodeSet::singleton(t), x)).min_by_key(|p| p.len())
        };
        if let Some(m) = mediators.intersection(z).first() {
            let p1 = causal_to(m).expect("mediator is reachable");
            let p2 = pd_path(dag, m, y, x).expect("mediator reaches Y");
            let edges = path_edges(&p1).chain(path_edges(&p2)).collect();
            out.push((AdversarialCase::MediatorInZ, p1[0], *p2.last().unwrap(), edges));
        }
        for t in y.intersection(&mediators) {
            if let (Some(p), Some(q)) = (causal_to(t), directed_path(dag, t, z)) {
                let edges = path_edges(&p).chain(path_edges(&q)).collect();
                out.push((AdversarialCase::DescendantOfOutcome, p[0], t, edges));
                break;
            }
        }
        for w in mediators.difference(y) {
            if directed_path(dag, w, z).is_none() {
                continue;
            }
            let p1 = causal_to(w).expect("mediator is reachable");
            let p2 = pd_path(dag, w, y, x).expect("mediator reaches Y");
            let mut p = p1.clone();
            p.extend_from_slice(&p2[1..]);
            // The mediator closest to the outcome with a path into Z: its
            // path to Z cannot meet the causal path again.
            let q = p[1..p.len() - 1]
                .iter()
                .rev()
                .find_map(|&v| directed_path(dag, v, z))
                .expect("w qualifies");
            let edges = path_edges(&p).chain(path_edges(&q)).collect();
            out.push((AdversarialCase::DescendantOfMediator, p[0], *p.last().unwrap(), edges));
            break;
        }
    }

    for s in x {
        for t in y {
            let edges = dag.edges().iter().map(|e| e.as_directed().unwrap()).collect();
            out.push((AdversarialCase::Generic, s, t, edges));
        }
    }
    Ok(out)
}
