use super::{DartGraph, DartId, EdgeId, VertexId};
use crate::geometry::{orient_sign, IVec2, Vec2};
use crate::{Error, Result};
use std::cmp::Ordering;

/// Vertex positions in the plane plus an integer translation for every dart.
///
/// The lift of dart `d` runs from `p(tail)` to `p(head) + tau(d)`, and
/// `tau(rev d) = -tau(d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordRep {
    pub positions: Vec<Vec2>,
    pub tau: Vec<IVec2>,
}

impl CoordRep {
    /// Builds a representation from one translation per edge.
    pub fn from_edge_tau(positions: Vec<Vec2>, edge_tau: &[IVec2]) -> Self {
        let tau = edge_tau.iter().flat_map(|&t| [t, -t]).collect();
        CoordRep { positions, tau }
    }

    /// Applies the gauge change `p(v) += pi(v)`, `tau(d) += pi(tail) - pi(head)`.
    pub fn regauged(&self, graph: &DartGraph, pi: &[IVec2]) -> CoordRep {
        let positions = self.positions.iter().zip(pi).map(|(&p, &k)| p.shifted(k)).collect();
        let tau = graph
            .darts()
            .map(|d| self.tau[d.0] + pi[graph.tail(d).0] - pi[graph.head(d).0])
            .collect();
        CoordRep { positions, tau }
    }

    /// Gauge that moves every position into `[0, 1)^2`.
    pub fn canonical_gauge(&self) -> Vec<IVec2> {
        self.positions
            .iter()
            .map(|p| {
                let mut k = IVec2::new(-(p.x.floor() as i64), -(p.y.floor() as i64));
                // Tiny negative coordinates can round up to 1.
                if p.x + k.x as f64 >= 1.0 {
                    k.x -= 1;
                }
                if p.y + k.y as f64 >= 1.0 {
                    k.y -= 1;
                }
                k
            })
            .collect()
    }
}

/// A straight-line drawing of a [`DartGraph`] on the flat torus.
#[derive(Clone, Debug, PartialEq)]
pub struct Drawing {
    graph: DartGraph,
    rep: CoordRep,
}

impl Drawing {
    /// Pairs a graph with coordinates; checks sizes, finiteness and
    /// antisymmetry of the translations.
    pub fn new(graph: DartGraph, rep: CoordRep) -> Result<Self> {
        if rep.positions.len() != graph.num_vertices() {
            return Err(Error::InvalidGraph(format!(
                "{} positions for {} vertices",
                rep.positions.len(),
                graph.num_vertices()
            )));
        }
        if rep.tau.len() != graph.num_darts() {
            return Err(Error::InvalidGraph(format!(
                "{} translations for {} darts",
                rep.tau.len(),
                graph.num_darts()
            )));
        }
        if let Some(v) = rep.positions.iter().position(|p| !p.is_finite()) {
            return Err(Error::Degenerate(format!("vertex {v} has a non-finite position")));
        }
        for d in graph.darts() {
            if rep.tau[d.0] != -rep.tau[d.rev().0] {
                return Err(Error::InvalidGraph(format!("translation of dart {} is not antisymmetric", d.0)));
            }
        }
        Ok(Drawing { graph, rep })
    }

    /// Builds a drawing from edges `(tail, head, tau)` and derives the
    /// rotation system from the geometry.
    pub fn from_edges(positions: Vec<Vec2>, edges: &[(usize, usize, IVec2)]) -> Result<Self> {
        let n = positions.len();
        let ends: Vec<(usize, usize)> = edges.iter().map(|&(t, h, _)| (t, h)).collect();
        let tau: Vec<IVec2> = edges.iter().map(|e| e.2).collect();
        let rep = CoordRep::from_edge_tau(positions, &tau);
        let rotation = geometric_rotation(n, &ends, &rep)?;
        let graph = DartGraph::new(n, &ends, rotation)?;
        Drawing::new(graph, rep)
    }

    pub fn graph(&self) -> &DartGraph {
        &self.graph
    }

    pub fn rep(&self) -> &CoordRep {
        &self.rep
    }

    pub fn into_parts(self) -> (DartGraph, CoordRep) {
        (self.graph, self.rep)
    }

    pub fn positions(&self) -> &[Vec2] {
        &self.rep.positions
    }

    pub fn position(&self, v: VertexId) -> Vec2 {
        self.rep.positions[v.0]
    }

    pub fn tau(&self, d: DartId) -> IVec2 {
        self.rep.tau[d.0]
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    /// End point of the lift of `d` that starts at `p(tail)`.
    pub fn head_lift(&self, d: DartId) -> Vec2 {
        self.position(self.graph.head(d)).shifted(self.tau(d))
    }

    /// `p(head) + tau(d) - p(tail)`.
    pub fn displacement(&self, d: DartId) -> Vec2 {
        self.head_lift(d) - self.position(self.graph.tail(d))
    }

    /// Same graph and translations with new vertex positions.
    pub fn with_positions(&self, positions: Vec<Vec2>) -> Result<Drawing> {
        Drawing::new(self.graph.clone(), CoordRep { positions, tau: self.rep.tau.clone() })
    }

    /// Same graph with a different coordinate representation.
    pub fn with_rep(&self, rep: CoordRep) -> Result<Drawing> {
        Drawing::new(self.graph.clone(), rep)
    }

    /// Edges as `(tail, head, tau)`.
    pub fn edge_list(&self) -> Vec<(usize, usize, IVec2)> {
        self.graph
            .edges()
            .map(|e: EdgeId| {
                let d = e.dart();
                (self.graph.tail(d).0, self.graph.head(d).0, self.tau(d))
            })
            .collect()
    }

    /// The same drawing with every position moved into `[0, 1)^2`.
    pub fn canonicalize(&self) -> Drawing {
        let pi = self.rep.canonical_gauge();
        Drawing { graph: self.graph.clone(), rep: self.rep.regauged(&self.graph, &pi) }
    }
}

/// Orders darts around each vertex counterclockwise by the direction of
/// their lifts, starting from the positive x axis.
pub(crate) fn geometric_rotation(n: usize, ends: &[(usize, usize)], rep: &CoordRep) -> Result<Vec<Vec<DartId>>> {
    let mut rotation: Vec<Vec<DartId>> = vec![Vec::new(); n];
    for (e, &(t, h)) in ends.iter().enumerate() {
        rotation[t].push(DartId(2 * e));
        rotation[h].push(DartId(2 * e + 1));
    }
    for (v, darts) in rotation.iter_mut().enumerate() {
        let origin = rep.positions[v];
        let target = |d: DartId| {
            let e = ends[d.0 >> 1];
            let head = if d.is_forward() { e.1 } else { e.0 };
            rep.positions[head].shifted(rep.tau[d.0])
        };
        if let Some(&d) = darts.iter().find(|&&d| target(d) == origin) {
            return Err(Error::Degenerate(format!("dart {} has zero length", d.0)));
        }
        darts.sort_by(|&a, &b| compare_direction(origin, target(a), target(b)).then(a.cmp(&b)));
    }
    Ok(rotation)
}

fn half(origin: Vec2, p: Vec2) -> u8 {
    if p.y > origin.y || (p.y == origin.y && p.x > origin.x) {
        0
    } else {
        1
    }
}

/// Compares the directions `a - origin` and `b - origin` by angle in
/// `[0, 2π)`, exactly.
pub(crate) fn compare_direction(origin: Vec2, a: Vec2, b: Vec2) -> Ordering {
    half(origin, a)
        .cmp(&half(origin, b))
        .then_with(|| match orient_sign(origin, a, b) {
            1 => Ordering::Less,
            -1 => Ordering::Greater,
            _ => Ordering::Equal,
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalize_example() {
        let d = Drawing::from_edges(
            vec![Vec2::new(1.25, -0.25), Vec2::new(0.5, 0.5)],
            &[(0, 1, IVec2::new(0, 0)), (0, 0, IVec2::new(1, 0))],
        )
        .unwrap();
        let c = d.canonicalize();
        assert_eq!(c.position(VertexId(0)), Vec2::new(0.25, 0.75));
        assert_eq!(c.tau(DartId(0)), IVec2::new(-1, 1));
        for dart in d.graph().darts() {
            assert_eq!(c.displacement(dart), d.displacement(dart));
        }
        assert_eq!(c.canonicalize(), c);
    }

    #[test]
    fn direction_order() {
        let o = Vec2::ZERO;
        let e = Vec2::new(1.0, 0.0);
        let n = Vec2::new(0.0, 1.0);
        let w = Vec2::new(-1.0, 0.0);
        let s = Vec2::new(0.0, -1.0);
        assert_eq!(compare_direction(o, e, n), Ordering::Less);
        assert_eq!(compare_direction(o, n, w), Ordering::Less);
        assert_eq!(compare_direction(o, w, s), Ordering::Less);
        assert_eq!(compare_direction(o, s, e), Ordering::Greater);
    }
}
