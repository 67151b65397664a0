use super::{DartId, Drawing, Faces, VertexId};
use crate::geometry::IVec2;
use crate::{Error, Result};
use std::collections::BTreeMap;

/// Combinatorial summary of a drawing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub num_faces: usize,
    /// Every face is a triangle.
    pub is_triangulation: bool,
    /// A triangulation in which every vertex carries a loop.
    pub is_zipper: bool,
    pub loop_vertices: Vec<VertexId>,
    /// Degree to number of vertices with that degree.
    pub degree_profile: BTreeMap<usize, usize>,
}

pub fn classify_drawing(drawing: &Drawing) -> Classification {
    let g = drawing.graph();
    let faces = Faces::new(g);
    let is_triangulation = faces.walks().iter().all(|w| w.len() == 3);
    let loop_vertices: Vec<VertexId> = g.vertices().filter(|&v| g.has_loop_at(v)).collect();
    let mut degree_profile = BTreeMap::new();
    for v in g.vertices() {
        *degree_profile.entry(g.degree(v)).or_insert(0) += 1;
    }
    Classification {
        num_faces: faces.len(),
        is_triangulation,
        is_zipper: is_triangulation && loop_vertices.len() == g.num_vertices(),
        loop_vertices,
        degree_profile,
    }
}

/// Homology class of a closed walk: the sum of its dart translations.
pub fn homology_class(drawing: &Drawing, cycle: &[DartId]) -> Result<IVec2> {
    let g = drawing.graph();
    if cycle.is_empty() {
        return Err(Error::NotClosed(0));
    }
    for (i, &d) in cycle.iter().enumerate() {
        if d.0 >= g.num_darts() {
            return Err(Error::InvalidGraph(format!("unknown dart {}", d.0)));
        }
        let next = cycle[(i + 1) % cycle.len()];
        if next.0 >= g.num_darts() || g.head(d) != g.tail(next) {
            return Err(Error::NotClosed(i));
        }
    }
    Ok(cycle.iter().fold(IVec2::ZERO, |acc, &d| acc + drawing.tau(d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{lattice, zipper};

    #[test]
    fn one_vertex_triangulation_is_a_zipper() {
        let c = classify_drawing(&lattice(1, 1, 0).unwrap());
        assert!(c.is_triangulation && c.is_zipper);
        assert_eq!(c.num_faces, 2);
        assert_eq!(c.degree_profile, BTreeMap::from([(6, 1)]));
    }

    #[test]
    fn lattice_is_a_loopless_triangulation() {
        let c = classify_drawing(&lattice(3, 3, 0).unwrap());
        assert!(c.is_triangulation && !c.is_zipper);
        assert!(c.loop_vertices.is_empty());
        assert_eq!(c.degree_profile, BTreeMap::from([(6, 9)]));
    }

    #[test]
    fn five_vertex_zipper_is_six_regular() {
        let c = classify_drawing(&zipper(5, 0).unwrap());
        assert!(c.is_zipper);
        assert_eq!(c.loop_vertices.len(), 5);
        assert_eq!(c.degree_profile, BTreeMap::from([(6, 5)]));
    }

    #[test]
    fn homology_of_faces_and_loops() {
        let d = lattice(1, 1, 0).unwrap();
        let faces = Faces::new(d.graph());
        for w in faces.walks() {
            assert_eq!(homology_class(&d, w).unwrap(), IVec2::ZERO);
        }
        let l = d.graph().darts().find(|&x| d.tau(x) == IVec2::new(1, 0)).unwrap();
        assert_eq!(homology_class(&d, &[l]).unwrap(), IVec2::new(1, 0));
    }

    #[test]
    fn open_walks_are_rejected() {
        let d = lattice(3, 3, 0).unwrap();
        let g = d.graph();
        let x = g.darts().find(|&x| !g.is_loop(x)).unwrap();
        assert!(matches!(homology_class(&d, &[x]), Err(Error::NotClosed(0))));
        assert!(matches!(homology_class(&d, &[]), Err(Error::NotClosed(0))));
    }
}
