//! Simple polygons, visibility kernels and ear clipping.

use super::{orient_sign, segments_conflict, Vec2};
use crate::{Error, Result};

/// A simple polygon with at least three vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    vertices: Vec<Vec2>,
    orientation: i32,
}

impl Polygon {
    /// Builds a polygon, rejecting repeated or non-finite vertices and
    /// self-intersecting boundaries.
    pub fn new(vertices: Vec<Vec2>) -> Result<Self> {
        let k = vertices.len();
        if k < 3 {
            return Err(Error::Degenerate(format!("polygon with {k} vertices")));
        }
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::Degenerate("non-finite polygon vertex".into()));
        }
        for i in 0..k {
            if vertices[i] == vertices[(i + 1) % k] {
                return Err(Error::NonSimplePolygon);
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                let (a0, a1) = (vertices[i], vertices[(i + 1) % k]);
                let (b0, b1) = (vertices[j], vertices[(j + 1) % k]);
                if segments_conflict(a0, a1, b0, b1) {
                    return Err(Error::NonSimplePolygon);
                }
                // Non-adjacent edges may not even share an endpoint.
                let adjacent = j == i + 1 || (i == 0 && j == k - 1);
                if !adjacent && (a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1) {
                    return Err(Error::NonSimplePolygon);
                }
            }
        }
        // The lowest-then-leftmost vertex is convex, so its turn gives the
        // orientation exactly.
        let m = (0..k)
            .min_by(|&a, &b| {
                let (p, q) = (vertices[a], vertices[b]);
                p.y.total_cmp(&q.y).then(p.x.total_cmp(&q.x))
            })
            .unwrap();
        let orientation = orient_sign(vertices[(m + k - 1) % k], vertices[m], vertices[(m + 1) % k]);
        if orientation == 0 {
            return Err(Error::NonSimplePolygon);
        }
        Ok(Polygon { vertices, orientation })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `1` for counterclockwise, `-1` for clockwise.
    pub fn orientation(&self) -> i32 {
        self.orientation
    }

    pub fn signed_area(&self) -> f64 {
        let k = self.len();
        (0..k).map(|i| self.vertices[i].cross(self.vertices[(i + 1) % k])).sum::<f64>() * 0.5
    }

    /// True when vertex `i` turns against the polygon orientation or is flat.
    pub fn is_reflex(&self, i: usize) -> bool {
        let k = self.len();
        let s = orient_sign(self.vertices[(i + k - 1) % k], self.vertices[i], self.vertices[(i + 1) % k]);
        s * self.orientation <= 0
    }

    /// True when vertex `j` lies strictly on the inner side of every edge not
    /// incident to it, so it sees the whole polygon.
    pub fn vertex_in_strict_kernel(&self, j: usize) -> bool {
        let k = self.len();
        let q = self.vertices[j];
        (0..k)
            .filter(|&i| i != j && (i + 1) % k != j)
            .all(|i| orient_sign(self.vertices[i], self.vertices[(i + 1) % k], q) * self.orientation > 0)
    }
}

/// The intersection of the inner half-planes of all polygon edges.
#[derive(Clone, Debug)]
pub struct Kernel {
    edges: Vec<(Vec2, Vec2)>,
    region: Vec<Vec2>,
}

impl Kernel {
    /// Vertices of the kernel region in counterclockwise order, computed in
    /// floating point. Empty when the kernel is empty.
    pub fn region(&self) -> &[Vec2] {
        &self.region
    }

    pub fn is_empty(&self) -> bool {
        self.region.is_empty()
    }

    /// Exact membership in the closed kernel.
    pub fn contains(&self, q: Vec2) -> bool {
        self.edges.iter().all(|&(a, b)| orient_sign(a, b, q) >= 0)
    }

    /// Exact membership in the open kernel.
    pub fn contains_strict(&self, q: Vec2) -> bool {
        self.edges.iter().all(|&(a, b)| orient_sign(a, b, q) > 0)
    }
}

/// Kernel of a simple polygon: clips the bounding box against every edge's
/// inner half-plane.
pub fn visibility_kernel(poly: &Polygon) -> Kernel {
    let k = poly.len();
    let vs = poly.vertices();
    let edges: Vec<(Vec2, Vec2)> = (0..k)
        .map(|i| {
            let (a, b) = (vs[i], vs[(i + 1) % k]);
            if poly.orientation() > 0 {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    let (mut lo, mut hi) = (vs[0], vs[0]);
    for p in vs {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let mut region = vec![lo, Vec2::new(hi.x, lo.y), hi, Vec2::new(lo.x, hi.y)];
    for &(a, b) in &edges {
        region = clip(&region, a, b);
        if region.is_empty() {
            break;
        }
    }
    Kernel { edges, region }
}

fn clip(poly: &[Vec2], a: Vec2, b: Vec2) -> Vec<Vec2> {
    let d = b - a;
    let side = |p: Vec2| d.cross(p - a);
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        let (sp, sq) = (side(p), side(q));
        if sp >= 0.0 {
            out.push(p);
        }
        if (sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0) {
            out.push(p + (q - p) * (sp / (sp - sq)));
        }
    }
    out
}

/// Triangulates a simple polygon by ear clipping and returns the diagonals
/// as sorted index pairs. Ears are taken at the lowest list position `>= 1`,
/// so convex polygons yield a fan from vertex 0.
pub fn triangulate_polygon(poly: &Polygon) -> Result<Vec<(usize, usize)>> {
    let vs = poly.vertices();
    let s = poly.orientation();
    let mut list: Vec<usize> = (0..vs.len()).collect();
    let mut diagonals = Vec::with_capacity(vs.len().saturating_sub(3));
    while list.len() > 3 {
        let m = list.len();
        let pos = (1..m)
            .chain(0..1)
            .find(|&i| is_ear(vs, &list, i, s))
            .ok_or(Error::NonSimplePolygon)?;
        let (a, b) = (list[(pos + m - 1) % m], list[(pos + 1) % m]);
        diagonals.push((a.min(b), a.max(b)));
        list.remove(pos);
    }
    Ok(diagonals)
}

fn is_ear(vs: &[Vec2], list: &[usize], i: usize, s: i32) -> bool {
    let m = list.len();
    let (ip, ic, in_) = (list[(i + m - 1) % m], list[i], list[(i + 1) % m]);
    let (p, c, n) = (vs[ip], vs[ic], vs[in_]);
    if orient_sign(p, c, n) * s <= 0 {
        return false;
    }
    list.iter().filter(|&&j| j != ip && j != ic && j != in_).all(|&j| {
        let q = vs[j];
        !(orient_sign(p, c, q) * s >= 0 && orient_sign(c, n, q) * s >= 0 && orient_sign(n, p, q) * s >= 0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pts: &[(f64, f64)]) -> Polygon {
        Polygon::new(pts.iter().map(|&(x, y)| Vec2::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn convex_pentagon_fan() {
        let p = poly(&[(0.0, 0.0), (2.0, 0.0), (3.0, 1.5), (1.0, 3.0), (-1.0, 1.5)]);
        assert_eq!(triangulate_polygon(&p).unwrap(), vec![(0, 2), (0, 3)]);
    }

    #[test]
    fn clockwise_orientation_detected() {
        let p = poly(&[(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)]);
        assert_eq!(p.orientation(), -1);
        assert_eq!(triangulate_polygon(&p).unwrap().len(), 1);
        let k = visibility_kernel(&p);
        assert!(k.contains_strict(Vec2::new(0.5, 0.5)));
    }

    #[test]
    fn bowtie_rejected() {
        let pts = vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 1.0), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)];
        assert!(matches!(Polygon::new(pts), Err(Error::NonSimplePolygon)));
    }

    #[test]
    fn reflex_polygon_kernel() {
        // An L-shape: kernel is the unit corner square.
        let p = poly(&[(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (1.0, 1.0), (1.0, 2.0), (0.0, 2.0)]);
        assert!(p.is_reflex(3));
        let k = visibility_kernel(&p);
        assert!(!k.is_empty());
        assert!(k.contains(Vec2::new(1.0, 1.0)));
        assert!(!k.contains_strict(Vec2::new(1.0, 1.0)));
        assert!(k.contains_strict(Vec2::new(0.5, 0.5)));
        assert!(!k.contains(Vec2::new(1.5, 0.5)));
        let diags = triangulate_polygon(&p).unwrap();
        assert_eq!(diags.len(), 3);
    }
}
