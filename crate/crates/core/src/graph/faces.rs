use super::{DartGraph, DartId, Drawing};
use crate::geometry::{IVec2, Vec2};

/// Facial walks of a rotation system. Each walk keeps its face on the left.
#[derive(Clone, Debug)]
pub struct Faces {
    walks: Vec<Vec<DartId>>,
    face_of: Vec<usize>,
}

impl Faces {
    pub fn new(graph: &DartGraph) -> Self {
        let mut face_of = vec![usize::MAX; graph.num_darts()];
        let mut walks = Vec::new();
        for start in graph.darts() {
            if face_of[start.0] != usize::MAX {
                continue;
            }
            let f = walks.len();
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                face_of[d.0] = f;
                walk.push(d);
                d = graph.face_next(d);
                if d == start {
                    break;
                }
            }
            walks.push(walk);
        }
        Faces { walks, face_of }
    }

    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }

    pub fn walks(&self) -> &[Vec<DartId>] {
        &self.walks
    }

    pub fn walk(&self, f: usize) -> &[DartId] {
        &self.walks[f]
    }

    /// Index of the face to the left of `d`.
    pub fn face_of(&self, d: DartId) -> usize {
        self.face_of[d.0]
    }
}

/// Lifted corners of a facial walk, starting at `p(tail(walk[0]))`, and the
/// total translation around the walk (zero for a disk face).
pub fn face_corners(drawing: &Drawing, walk: &[DartId]) -> (Vec<Vec2>, IVec2) {
    let g = drawing.graph();
    let mut off = IVec2::ZERO;
    let mut corners = Vec::with_capacity(walk.len());
    for &d in walk {
        corners.push(drawing.position(g.tail(d)).shifted(off));
        off += drawing.tau(d);
    }
    (corners, off)
}
