use super::rep::geometric_rotation;
use super::{DartId, Drawing, EdgeId, Faces, VertexId};
use crate::geometry::segment::candidate_offsets;
use crate::geometry::{segments_conflict, IVec2};
use std::fmt;

/// A reason a drawing fails to be an embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    CoincidentVertices(VertexId, VertexId),
    ZeroLengthEdge(EdgeId),
    Crossing { a: EdgeId, b: EdgeId, offset: IVec2 },
    RotationMismatch(VertexId),
    NotCellular { euler: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CoincidentVertices(a, b) => write!(f, "vertices {a} and {b} coincide"),
            Violation::ZeroLengthEdge(e) => write!(f, "edge {e} has zero length"),
            Violation::Crossing { a, b, offset } => write!(f, "edge {a} meets edge {b} translated by {offset}"),
            Violation::RotationMismatch(v) => write!(f, "rotation at {v} disagrees with the geometry"),
            Violation::NotCellular { euler } => write!(f, "V - E + F = {euler}, faces are not all disks"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct EmbeddingReport {
    pub violations: Vec<Violation>,
}

impl EmbeddingReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that a drawing is an embedding: distinct vertices, nonzero edges,
/// no two edge lifts meeting except at shared endpoints, rotations that
/// match the geometry, and disk faces.
pub fn check_embedding(drawing: &Drawing) -> EmbeddingReport {
    let g = drawing.graph();
    let mut violations = Vec::new();

    let canon = drawing.canonicalize();
    let mut order: Vec<usize> = (0..g.num_vertices()).collect();
    let pos = canon.positions();
    order.sort_by(|&a, &b| pos[a].x.total_cmp(&pos[b].x).then(pos[a].y.total_cmp(&pos[b].y)));
    for w in order.windows(2) {
        if pos[w[0]] == pos[w[1]] {
            violations.push(Violation::CoincidentVertices(VertexId(w[0].min(w[1])), VertexId(w[0].max(w[1]))));
        }
    }

    let segs: Vec<_> = g
        .edges()
        .map(|e| {
            let d = e.dart();
            let t = drawing.position(g.tail(d));
            let h = drawing.position(g.head(d));
            (t, h, drawing.tau(d))
        })
        .collect();
    for (e, s) in segs.iter().enumerate() {
        if s.1.shifted(s.2) == s.0 {
            violations.push(Violation::ZeroLengthEdge(EdgeId(e)));
        }
    }
    for i in 0..segs.len() {
        let (a0, a1) = (segs[i].0, segs[i].1.shifted(segs[i].2));
        for j in i..segs.len() {
            let (bt, bh, btau) = segs[j];
            let found = candidate_offsets((a0, a1), (bt, bh.shifted(btau))).find(|&k| {
                if i == j && k.is_zero() {
                    return false;
                }
                segments_conflict(a0, a1, bt.shifted(k), bh.shifted(btau + k))
            });
            if let Some(offset) = found {
                violations.push(Violation::Crossing { a: EdgeId(i), b: EdgeId(j), offset });
            }
        }
    }

    if let Ok(geo) = geometric_rotation(g.num_vertices(), &g.edge_ends(), drawing.rep()) {
        for v in g.vertices() {
            if !same_cycle(g.rotation(v), &geo[v.0]) {
                violations.push(Violation::RotationMismatch(v));
            }
        }
    }

    let faces = Faces::new(g);
    let euler = g.num_vertices() as i64 - g.num_edges() as i64 + faces.len() as i64;
    if euler != 0 {
        violations.push(Violation::NotCellular { euler });
    }
    EmbeddingReport { violations }
}

fn same_cycle(a: &[DartId], b: &[DartId]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    match b.iter().position(|&d| d == a[0]) {
        Some(s) => (0..a.len()).all(|i| a[i] == b[(s + i) % b.len()]),
        None => false,
    }
}

/// Fast validity test for triangulations: every face is a counterclockwise
/// triangle with zero total translation and the face count fits the torus.
/// For triangulations this is equivalent to [`check_embedding`].
pub fn check_triangulation(drawing: &Drawing) -> crate::Result<()> {
    let g = drawing.graph();
    let faces = Faces::new(g);
    let euler = g.num_vertices() as i64 - g.num_edges() as i64 + faces.len() as i64;
    if euler != 0 {
        return Err(crate::Error::InvalidEmbedding(format!("V - E + F = {euler}")));
    }
    for (f, walk) in faces.walks().iter().enumerate() {
        if walk.len() != 3 {
            return Err(crate::Error::InvalidEmbedding(format!("face {f} has {} sides", walk.len())));
        }
        let (c, total) = super::face_corners(drawing, walk);
        if !total.is_zero() {
            return Err(crate::Error::InvalidEmbedding(format!("face {f} is not contractible")));
        }
        if crate::geometry::orient_sign(c[0], c[1], c[2]) <= 0 {
            return Err(crate::Error::InvalidEmbedding(format!("face {f} is not counterclockwise")));
        }
    }
    Ok(())
}
