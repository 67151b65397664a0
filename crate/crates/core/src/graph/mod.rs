//! Combinatorial maps on the torus and their straight-line drawings.
//!
//! Darts come in pairs: dart `2e` runs from the tail to the head of edge
//! `e` and dart `2e + 1` is its reversal.

mod classify;
mod faces;
pub mod io;
mod rep;
mod validity;

pub use classify::{classify_drawing, homology_class, Classification};
pub use faces::{face_corners, Faces};
pub use rep::{CoordRep, Drawing};
pub use validity::{check_embedding, check_triangulation, EmbeddingReport, Violation};

use crate::{Error, Result};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DartId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl DartId {
    pub fn index(self) -> usize {
        self.0
    }

    pub fn rev(self) -> DartId {
        DartId(self.0 ^ 1)
    }

    pub fn edge(self) -> EdgeId {
        EdgeId(self.0 >> 1)
    }

    /// True for the dart pointing from the edge's tail to its head.
    pub fn is_forward(self) -> bool {
        self.0 & 1 == 0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }

    pub fn dart(self) -> DartId {
        DartId(self.0 << 1)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for DartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// A graph with a rotation system: for each vertex, the counterclockwise
/// cyclic order of its outgoing darts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DartGraph {
    tails: Vec<VertexId>,
    rotation: Vec<Vec<DartId>>,
    slot: Vec<usize>,
}

impl DartGraph {
    /// Builds a graph from edge endpoints and per-vertex rotations.
    /// Every dart must occur exactly once, in the rotation of its tail.
    pub fn new(num_vertices: usize, ends: &[(usize, usize)], rotation: Vec<Vec<DartId>>) -> Result<Self> {
        if rotation.len() != num_vertices {
            return Err(Error::InvalidGraph(format!(
                "rotation lists {} vertices, expected {num_vertices}",
                rotation.len()
            )));
        }
        let mut tails = Vec::with_capacity(2 * ends.len());
        for (e, &(t, h)) in ends.iter().enumerate() {
            if t >= num_vertices || h >= num_vertices {
                return Err(Error::InvalidGraph(format!("edge {e} has an endpoint out of range")));
            }
            tails.push(VertexId(t));
            tails.push(VertexId(h));
        }
        let mut slot = vec![usize::MAX; tails.len()];
        for (v, darts) in rotation.iter().enumerate() {
            for (i, d) in darts.iter().enumerate() {
                if d.0 >= tails.len() {
                    return Err(Error::InvalidGraph(format!("rotation of v{v} names unknown dart {}", d.0)));
                }
                if tails[d.0].0 != v {
                    return Err(Error::InvalidGraph(format!("dart {} listed at v{v} but leaves {}", d.0, tails[d.0])));
                }
                if slot[d.0] != usize::MAX {
                    return Err(Error::InvalidGraph(format!("dart {} listed twice", d.0)));
                }
                slot[d.0] = i;
            }
        }
        if let Some(d) = slot.iter().position(|&s| s == usize::MAX) {
            return Err(Error::InvalidGraph(format!("dart {d} missing from rotation")));
        }
        Ok(DartGraph { tails, rotation, slot })
    }

    pub fn num_vertices(&self) -> usize {
        self.rotation.len()
    }

    pub fn num_darts(&self) -> usize {
        self.tails.len()
    }

    pub fn num_edges(&self) -> usize {
        self.tails.len() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.num_vertices()).map(VertexId)
    }

    pub fn darts(&self) -> impl Iterator<Item = DartId> {
        (0..self.num_darts()).map(DartId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.num_edges()).map(EdgeId)
    }

    pub fn tail(&self, d: DartId) -> VertexId {
        self.tails[d.0]
    }

    pub fn head(&self, d: DartId) -> VertexId {
        self.tails[d.0 ^ 1]
    }

    pub fn is_loop(&self, d: DartId) -> bool {
        self.tail(d) == self.head(d)
    }

    pub fn rotation(&self, v: VertexId) -> &[DartId] {
        &self.rotation[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v.0].len()
    }

    /// Position of `d` in the rotation of its tail.
    pub fn slot(&self, d: DartId) -> usize {
        self.slot[d.0]
    }

    /// Next dart counterclockwise around the tail of `d`.
    pub fn next_ccw(&self, d: DartId) -> DartId {
        let r = &self.rotation[self.tail(d).0];
        r[(self.slot[d.0] + 1) % r.len()]
    }

    /// Next dart clockwise around the tail of `d`.
    pub fn prev_ccw(&self, d: DartId) -> DartId {
        let r = &self.rotation[self.tail(d).0];
        r[(self.slot[d.0] + r.len() - 1) % r.len()]
    }

    /// Successor of `d` along the face to its left.
    pub fn face_next(&self, d: DartId) -> DartId {
        self.prev_ccw(d.rev())
    }

    pub fn has_loop_at(&self, v: VertexId) -> bool {
        self.rotation[v.0].iter().any(|&d| self.is_loop(d))
    }

    /// `(tail, head)` of every edge.
    pub fn edge_ends(&self) -> Vec<(usize, usize)> {
        self.edges().map(|e| (self.tail(e.dart()).0, self.head(e.dart()).0)).collect()
    }

    /// True when both graphs have the same darts with the same endpoints.
    pub fn same_darts(&self, other: &DartGraph) -> bool {
        self.tails == other.tails
    }
}
