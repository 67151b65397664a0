//! Isotopy testing by translation-vector normalization.
//!
//! Two embeddings of the same graph are isotopic exactly when, after a gauge
//! change that matches their translations along a spanning tree, all dart
//! translations agree.

use crate::geometry::IVec2;
use crate::graph::{check_embedding, CoordRep, DartGraph, DartId, Drawing, VertexId};
use crate::{Error, Result};
use std::collections::VecDeque;

/// An integer vector per vertex, defining the gauge change
/// `p(v) += pi(v)`, `tau(d) += pi(tail) - pi(head)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugePotential(pub Vec<IVec2>);

/// Outcome of an isotopy test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotopyVerdict {
    Isotopic,
    /// A dart whose normalized translations differ.
    NotIsotopic { witness: DartId },
}

impl IsotopyVerdict {
    pub fn is_isotopic(&self) -> bool {
        matches!(self, IsotopyVerdict::Isotopic)
    }
}

pub fn apply_gauge(rep: &CoordRep, graph: &DartGraph, pi: &GaugePotential) -> CoordRep {
    rep.regauged(graph, &pi.0)
}

/// BFS tree darts from vertex 0, each leading from a discovered vertex to a
/// new one, in discovery order.
fn bfs_tree(graph: &DartGraph) -> Vec<DartId> {
    let n = graph.num_vertices();
    if n == 0 {
        return Vec::new();
    }
    let mut seen = vec![false; n];
    let mut tree = Vec::with_capacity(n - 1);
    let mut queue = VecDeque::from([VertexId(0)]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &d in graph.rotation(v) {
            let h = graph.head(d);
            if !seen[h.0] {
                seen[h.0] = true;
                tree.push(d);
                queue.push_back(h);
            }
        }
    }
    tree
}

/// Gauge change taking `rep1` to a representation that agrees with `rep0`
/// on a BFS spanning tree rooted at vertex 0, with `pi(0) = 0`.
pub fn normalize_representation(
    rep0: &CoordRep,
    rep1: &CoordRep,
    graph: &DartGraph,
) -> Result<(CoordRep, GaugePotential)> {
    let n = graph.num_vertices();
    if rep0.positions.len() != n || rep1.positions.len() != n {
        return Err(Error::GraphMismatch("position count differs from vertex count".into()));
    }
    let tree = bfs_tree(graph);
    if tree.len() + 1 != n && n > 0 {
        return Err(Error::InvalidGraph("graph is disconnected".into()));
    }
    let mut pi = vec![IVec2::ZERO; n];
    for d in tree {
        // tau1(d) + pi(t) - pi(h) = tau0(d)
        let t = graph.tail(d).0;
        pi[graph.head(d).0] = rep1.tau[d.0] + pi[t] - rep0.tau[d.0];
    }
    let pi = GaugePotential(pi);
    Ok((apply_gauge(rep1, graph, &pi), pi))
}

/// Decides whether two drawings of the same graph are isotopic embeddings.
pub fn is_isotopic(a: &Drawing, b: &Drawing) -> Result<IsotopyVerdict> {
    if !a.graph().same_darts(b.graph()) {
        return Err(Error::GraphMismatch("the drawings have different darts".into()));
    }
    for (name, d) in [("first", a), ("second", b)] {
        let report = check_embedding(d);
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidEmbedding(format!("{name} drawing: {v}")));
        }
    }
    isotopy_verdict(a, b)
}

/// The isotopy test without validating the inputs.
pub fn isotopy_verdict(a: &Drawing, b: &Drawing) -> Result<IsotopyVerdict> {
    let (norm, _) = normalize_representation(a.rep(), b.rep(), a.graph())?;
    let witness = a.graph().darts().find(|d| norm.tau[d.0] != a.tau(*d));
    Ok(match witness {
        Some(w) => IsotopyVerdict::NotIsotopic { witness: w },
        None => IsotopyVerdict::Isotopic,
    })
}
