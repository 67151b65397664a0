use crate::geometry::{orient_sign, Polygon, Vec2};
use crate::graph::{DartId, Drawing, EdgeId, VertexId};
use crate::{Error, Result};

/// The link of a loop-free vertex: the lifted heads of its darts in
/// counterclockwise rotation order.
#[derive(Clone, Debug)]
pub struct LinkPolygon {
    center: VertexId,
    darts: Vec<DartId>,
    points: Vec<Vec2>,
}

impl LinkPolygon {
    pub fn new(drawing: &Drawing, u: VertexId) -> Result<Self> {
        let g = drawing.graph();
        if u.0 >= g.num_vertices() {
            return Err(Error::Precondition(format!("unknown vertex {}", u.0)));
        }
        if g.has_loop_at(u) {
            return Err(Error::LoopVertex(u.0));
        }
        let darts = g.rotation(u).to_vec();
        let points = darts.iter().map(|&d| drawing.head_lift(d)).collect();
        Ok(LinkPolygon { center: u, darts, points })
    }

    pub fn center(&self) -> VertexId {
        self.center
    }

    pub fn darts(&self) -> &[DartId] {
        &self.darts
    }

    pub fn points(&self) -> &[Vec2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn polygon(&self) -> Result<Polygon> {
        Polygon::new(self.points.clone())
    }

    /// True when link vertex `j` lies strictly inside the kernel, judged
    /// against the edges not incident to it.
    pub fn sees_from(&self, j: usize) -> bool {
        let k = self.points.len();
        let q = self.points[j];
        (0..k)
            .filter(|&i| i != j && (i + 1) % k != j)
            .all(|i| orient_sign(self.points[i], self.points[(i + 1) % k], q) > 0)
    }

    /// True when link vertex `j` does not turn strictly left.
    pub fn is_reflex(&self, j: usize) -> bool {
        let k = self.points.len();
        orient_sign(self.points[(j + k - 1) % k], self.points[j], self.points[(j + 1) % k]) <= 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DogFacing {
    Left,
    Right,
}

/// Classification of a vertex by the shape of its link.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkClass {
    /// A neighbour lies strictly inside the kernel; collapse along this dart.
    Good(DartId),
    /// Bad hexagon whose two reflex vertices are adjacent.
    Cat,
    /// Bad hexagon whose reflex vertices are separated by one convex vertex.
    Dog(DogFacing),
    /// Any other bad link.
    Bad,
}

pub fn classify_link(drawing: &Drawing, u: VertexId) -> Result<LinkClass> {
    let link = LinkPolygon::new(drawing, u)?;
    let k = link.len();
    if let Some(j) = (0..k).find(|&j| link.sees_from(j)) {
        return Ok(LinkClass::Good(link.darts[j]));
    }
    let reflex: Vec<usize> = (0..k).filter(|&j| link.is_reflex(j)).collect();
    if k != 6 || reflex.len() != 2 {
        return Ok(LinkClass::Bad);
    }
    let gap = (reflex[1] - reflex[0]).min(6 - (reflex[1] - reflex[0]));
    Ok(match gap {
        1 => LinkClass::Cat,
        2 => {
            let nose = if reflex[1] - reflex[0] == 2 { reflex[0] + 1 } else { (reflex[1] + 1) % 6 };
            let p = link.points();
            let nape = (nose + 3) % 6;
            let ahead = (nose + 1) % 6;
            // The ccw chain from nose to nape must stay right of nose->nape;
            // if its first vertex does not, that vertex is the mouth.
            let mouth_ahead = orient_sign(p[nose], p[nape], p[ahead]) >= 0;
            LinkClass::Dog(if mouth_ahead { DogFacing::Left } else { DogFacing::Right })
        }
        _ => LinkClass::Bad,
    })
}

/// True when the two triangles beside `e` form a strictly convex
/// quadrilateral, so `e` can be replaced by the other diagonal.
pub fn is_flippable(drawing: &Drawing, e: EdgeId) -> Result<bool> {
    let g = drawing.graph();
    if e.0 >= g.num_edges() {
        return Err(Error::Precondition(format!("unknown edge {}", e.0)));
    }
    let d = e.dart();
    let l1 = g.face_next(d);
    let r1 = g.face_next(d.rev());
    if g.face_next(g.face_next(l1)) != d || g.face_next(g.face_next(r1)) != d.rev() {
        return Err(Error::Degenerate(format!("faces beside {e} are not triangles")));
    }
    if l1 == d.rev() || r1 == d || g.face_next(l1) == d.rev() {
        return Err(Error::Degenerate(format!("{e} borders a single face")));
    }
    let x = drawing.position(g.tail(d));
    let y = drawing.head_lift(d);
    let z = drawing.position(g.head(l1)).shifted(drawing.tau(d) + drawing.tau(l1));
    let w = drawing.head_lift(r1);
    let quad = [x, w, y, z];
    Ok((0..4).all(|i| orient_sign(quad[i], quad[(i + 1) % 4], quad[(i + 2) % 4]) > 0))
}
