//! Vertex collapses: link shapes, the good-vertex search and the graph
//! surgery that contracts an edge.

mod link;
mod surgery;

pub use link::{classify_link, is_flippable, DogFacing, LinkClass, LinkPolygon};
pub use surgery::{collapse_graph, direct_collapse, CollapseRecord, DirectCollapse};

use crate::graph::{classify_drawing, DartId, Drawing, VertexId};
use crate::{Error, Result};

/// Outcome of the good-vertex search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GoodVertex {
    /// Collapse `vertex` along `dart` into the dart's head.
    Collapse { vertex: VertexId, dart: DartId },
    /// Every vertex carries a loop; nothing can be collapsed.
    Zipper,
}

/// Finds a loop-free vertex with a neighbour strictly inside the kernel of
/// its link. Candidates are tried by increasing degree, then id; within a
/// link, darts are tried in rotation order.
pub fn find_good_vertex(drawing: &Drawing) -> Result<GoodVertex> {
    let class = classify_drawing(drawing);
    if !class.is_triangulation {
        return Err(Error::Precondition("drawing is not a triangulation".into()));
    }
    if class.is_zipper {
        return Ok(GoodVertex::Zipper);
    }
    let g = drawing.graph();
    let mut candidates: Vec<VertexId> = g.vertices().filter(|&v| !g.has_loop_at(v)).collect();
    candidates.sort_by_key(|&v| (g.degree(v), v.0));
    for u in candidates {
        let link = LinkPolygon::new(drawing, u)?;
        if let Some(j) = (0..link.len()).find(|&j| link.sees_from(j)) {
            return Ok(GoodVertex::Collapse { vertex: u, dart: link.darts()[j] });
        }
    }
    Err(Error::Internal("triangulation without loops at some vertex has no good vertex".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{lattice, zipper};
    use crate::graph::check_embedding;
    use crate::{IVec2, Vec2};

    /// The one-vertex triangulation with a degree-3 vertex inside a face.
    fn stacked() -> Drawing {
        let edges = [
            (0, 0, IVec2::new(1, 0)),
            (0, 0, IVec2::new(0, 1)),
            (0, 0, IVec2::new(1, 1)),
            (1, 0, IVec2::new(0, 0)),
            (1, 0, IVec2::new(1, 0)),
            (1, 0, IVec2::new(1, 1)),
        ];
        Drawing::from_edges(vec![Vec2::new(0.0, 0.0), Vec2::new(0.7, 0.3)], &edges).unwrap()
    }

    #[test]
    fn degree_three_vertex_collapses() {
        let d = stacked();
        assert!(check_embedding(&d).is_valid());
        let LinkClass::Good(dart) = classify_link(&d, VertexId(1)).unwrap() else { panic!("triangle link is good") };
        assert_eq!(d.graph().tail(dart), VertexId(1));
        let GoodVertex::Collapse { vertex, dart } = find_good_vertex(&d).unwrap() else { panic!("expected a collapse") };
        assert_eq!(vertex, VertexId(1));
        let c = direct_collapse(&d, dart).unwrap();
        assert_eq!(c.drawing.num_vertices(), 1);
        assert_eq!(c.drawing.graph().num_edges(), 3);
        assert!(check_embedding(&c.drawing).is_valid());
        assert!(classify_drawing(&c.drawing).is_zipper);
        assert_eq!(c.step.end[1], c.step.start[1] + d.displacement(dart));
    }

    #[test]
    fn lattice_link_is_convex() {
        let d = lattice(3, 3, 0).unwrap();
        let link = LinkPolygon::new(&d, VertexId(4)).unwrap();
        assert_eq!(link.len(), 6);
        assert!((0..6).all(|j| link.sees_from(j) && !link.is_reflex(j)));
        assert!(matches!(classify_link(&d, VertexId(4)).unwrap(), LinkClass::Good(_)));
    }

    #[test]
    fn zippers_signal_the_base_case() {
        let z = zipper(5, 0).unwrap();
        assert_eq!(find_good_vertex(&z).unwrap(), GoodVertex::Zipper);
        assert!(matches!(classify_link(&z, VertexId(0)), Err(Error::LoopVertex(0))));
    }

    #[test]
    fn small_lattice_collapse_stays_valid() {
        let d = lattice(2, 2, 1).unwrap();
        let GoodVertex::Collapse { dart, .. } = find_good_vertex(&d).unwrap() else { panic!("expected a collapse") };
        let c = direct_collapse(&d, dart).unwrap();
        assert_eq!(c.drawing.num_vertices(), 3);
        assert!(check_embedding(&c.drawing).is_valid());
    }

    #[test]
    fn retailed_darts_absorb_the_contracted_translation() {
        let d = lattice(4, 4, 0).unwrap();
        let g = d.graph();
        let dart = g.darts().find(|&x| d.tau(x) == IVec2::new(1, 0)).unwrap();
        let u = g.tail(dart);
        let (new, rec) = collapse_graph(&d, dart).unwrap();
        let deleted: Vec<_> = rec.merged.iter().map(|m| m.0).collect();
        let mut checked = 0;
        for x in g.darts().filter(|&x| g.tail(x) == u && x.edge() != dart.edge() && !deleted.contains(&x.edge())) {
            let nd = rec.dart_map[x.0].unwrap();
            assert_eq!(new.tau(nd), d.tau(x) - d.tau(dart));
            checked += 1;
        }
        assert_eq!(checked, 3);
    }
}
