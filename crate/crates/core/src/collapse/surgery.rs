use crate::geometry::{IVec2, Vec2};
use crate::graph::{CoordRep, DartGraph, DartId, Drawing, EdgeId, VertexId};
use crate::morph::MorphStep;
use crate::{Error, Result};

use super::link::LinkPolygon;

/// Bookkeeping for an edge contraction `u -> v` along dart `d`.
///
/// The two faces beside `d` disappear. In each, the edge incident to `u` is
/// merged into the parallel edge incident to `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct CollapseRecord {
    /// The contracted dart, `removed -> target`, in the old graph.
    pub dart: DartId,
    pub removed: VertexId,
    pub target: VertexId,
    pub tau: IVec2,
    /// `(deleted, kept)` old edge ids of the two merged pairs.
    pub merged: [(EdgeId, EdgeId); 2],
    /// Old vertex to new vertex; `removed` maps to the image of `target`.
    pub vertex_map: Vec<VertexId>,
    /// Old edge to new edge; merged edges map to their partner, the
    /// contracted edge to `None`.
    pub edge_map: Vec<Option<EdgeId>>,
    /// Old dart to the new dart with the same tail and head images.
    pub dart_map: Vec<Option<DartId>>,
    pub new_edge_count: usize,
}

/// Contracts the edge of `d` combinatorially. Positions of surviving
/// vertices are kept; darts leaving the removed vertex are re-tailed at the
/// target with their translations adjusted so displacements are unchanged.
pub fn collapse_graph(drawing: &Drawing, d: DartId) -> Result<(Drawing, CollapseRecord)> {
    let g = drawing.graph();
    if d.0 >= g.num_darts() {
        return Err(Error::Precondition(format!("unknown dart {}", d.0)));
    }
    let (u, v) = (g.tail(d), g.head(d));
    if u == v {
        return Err(Error::Precondition(format!("dart {} is a loop", d.0)));
    }
    if g.has_loop_at(u) {
        return Err(Error::LoopVertex(u.0));
    }
    let f2 = g.face_next(d);
    let f3 = g.face_next(f2);
    let g1 = d.rev();
    let g2 = g.face_next(g1);
    let g3 = g.face_next(g2);
    if g.face_next(f3) != d || g.face_next(g3) != g1 {
        return Err(Error::Precondition(format!("faces beside dart {} are not triangles", d.0)));
    }
    let (e, del1, del2, kept1, kept2) = (d.edge(), f3.edge(), g2.edge(), f2.edge(), g3.edge());
    let distinct = [e, del1, del2];
    if del1 == del2 || del1 == e || del2 == e || distinct.contains(&kept1) || distinct.contains(&kept2) {
        return Err(Error::Precondition(format!("collapse of dart {} would merge an edge with itself", d.0)));
    }
    let tau_d = drawing.tau(d);
    let check = |a: DartId, b: DartId| -> Result<()> {
        // Dart `a` (incident to u) must become parallel to dart `b`.
        let mut ta = drawing.tau(a);
        if g.tail(a) == u {
            ta -= tau_d;
        }
        if g.head(a) == u {
            ta += tau_d;
        }
        if ta != drawing.tau(b) {
            return Err(Error::Internal(format!("merged darts {} and {} disagree", a.0, b.0)));
        }
        Ok(())
    };
    check(f3, f2.rev())?;
    check(g2, g3.rev())?;

    let n = g.num_vertices();
    let vertex_map: Vec<VertexId> = (0..n)
        .map(|w| {
            let w = if w == u.0 { v.0 } else { w };
            VertexId(if w > u.0 { w - 1 } else { w })
        })
        .collect();
    let mut edge_map: Vec<Option<EdgeId>> = vec![None; g.num_edges()];
    let mut ends = Vec::with_capacity(g.num_edges() - 3);
    let mut edge_tau = Vec::with_capacity(g.num_edges() - 3);
    for old in g.edges() {
        if distinct.contains(&old) {
            continue;
        }
        let od = old.dart();
        let mut t = drawing.tau(od);
        if g.tail(od) == u {
            t -= tau_d;
        }
        if g.head(od) == u {
            t += tau_d;
        }
        edge_map[old.0] = Some(EdgeId(ends.len()));
        ends.push((vertex_map[g.tail(od).0].0, vertex_map[g.head(od).0].0));
        edge_tau.push(t);
    }
    let mut dart_map: Vec<Option<DartId>> = vec![None; g.num_darts()];
    for old in g.darts() {
        if let Some(ne) = edge_map[old.edge().0] {
            dart_map[old.0] = Some(DartId(2 * ne.0 + (old.0 & 1)));
        }
    }
    dart_map[f3.0] = dart_map[f2.rev().0];
    dart_map[f3.rev().0] = dart_map[f2.0];
    dart_map[g2.0] = dart_map[g3.rev().0];
    dart_map[g2.rev().0] = dart_map[g3.0];
    edge_map[del1.0] = edge_map[kept1.0];
    edge_map[del2.0] = edge_map[kept2.0];

    let is_deleted = |x: DartId| distinct.contains(&x.edge());
    let u_rot = g.rotation(u);
    let k = u_rot.len();
    let s = g.slot(d);
    let survivors: Vec<DartId> = (1..k).map(|i| u_rot[(s + i) % k]).filter(|&x| !is_deleted(x)).collect();
    let mut rotation = Vec::with_capacity(n - 1);
    for w in g.vertices() {
        if w == u {
            continue;
        }
        let mut r = Vec::with_capacity(g.degree(w));
        for &x in g.rotation(w) {
            if x == g1 {
                r.extend(survivors.iter().map(|&y| dart_map[y.0].unwrap()));
            } else if !is_deleted(x) {
                r.push(dart_map[x.0].unwrap());
            }
        }
        rotation.push(r);
    }
    let new_graph = DartGraph::new(n - 1, &ends, rotation)?;
    let positions: Vec<Vec2> = g.vertices().filter(|&w| w != u).map(|w| drawing.position(w)).collect();
    let new_drawing = Drawing::new(new_graph, CoordRep::from_edge_tau(positions, &edge_tau))?;
    let new_edge_count = ends.len();
    let record = CollapseRecord {
        dart: d,
        removed: u,
        target: v,
        tau: tau_d,
        merged: [(del1, kept1), (del2, kept2)],
        vertex_map,
        edge_map,
        dart_map,
        new_edge_count,
    };
    Ok((new_drawing, record))
}

/// A valid collapse of a good vertex into one of its neighbours.
#[derive(Clone, Debug)]
pub struct DirectCollapse {
    pub drawing: Drawing,
    pub record: CollapseRecord,
    /// The degenerate linear motion of the removed vertex onto its target.
    pub step: MorphStep,
}

/// Collapses `tail(d)` into `head(d)`, which must lie strictly inside the
/// kernel of the tail's link.
pub fn direct_collapse(drawing: &Drawing, d: DartId) -> Result<DirectCollapse> {
    let g = drawing.graph();
    if d.0 >= g.num_darts() {
        return Err(Error::Precondition(format!("unknown dart {}", d.0)));
    }
    let u = g.tail(d);
    if g.has_loop_at(u) {
        return Err(Error::LoopVertex(u.0));
    }
    let link = LinkPolygon::new(drawing, u)?;
    let j = link.darts().iter().position(|&x| x == d).unwrap();
    if !link.sees_from(j) {
        return Err(Error::Precondition(format!(
            "{} does not lie in the kernel of the link of {u}",
            g.head(d)
        )));
    }
    let (collapsed, record) = collapse_graph(drawing, d)?;
    let mut end = drawing.positions().to_vec();
    end[u.0] = drawing.head_lift(d);
    let step = MorphStep::new(drawing.positions().to_vec(), end);
    Ok(DirectCollapse { drawing: collapsed, record, step })
}
