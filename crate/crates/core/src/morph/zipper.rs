//! Morphs between zippers, where every vertex carries a loop.

use super::{Carrier, Morph};
use crate::geometry::Vec2;
use crate::graph::{classify_drawing, Drawing};
use crate::{Error, Result};

/// Morphs between two zippers with identical translations.
///
/// Every face of a zipper contains a loop edge, and all loops are parallel
/// to one direction `σ`, so face orientations depend only on the
/// coordinates across `σ`. The morph first matches those coordinates, then
/// slides along `σ`: at most two steps.
pub fn zipper_morph(z0: &Drawing, z1: &Drawing) -> Result<Morph> {
    if !z0.graph().same_darts(z1.graph()) || z0.rep().tau != z1.rep().tau {
        return Err(Error::GraphMismatch("zippers must share graph and translations".into()));
    }
    if !classify_drawing(z0).is_zipper {
        return Err(Error::Precondition("not a zipper".into()));
    }
    let g = z0.graph();
    let loops: Vec<_> = g.darts().filter(|&d| g.is_loop(d) && d.is_forward()).collect();
    let sigma = z0.tau(loops[0]);
    let p0 = z0.positions().to_vec();
    let p1 = z1.positions().to_vec();
    let s = sigma.as_vec2().normalized().ok_or_else(|| Error::Degenerate("zero loop".into()))?;
    let nu = s.perp();
    if g.num_vertices() > 1 && loops.iter().any(|&d| z0.tau(d) != sigma && z0.tau(d) != -sigma) {
        return Err(Error::Precondition("zipper loops are not parallel".into()));
    }
    let carrier = vec![Carrier { first_step: 0, diagonals: Vec::new() }];
    if g.num_vertices() == 1 {
        let dir = (p1[0] - p0[0]).normalized().unwrap_or(s);
        return Morph::new(vec![p0, p1], vec![dir], carrier, Vec2::ZERO).map(|m| m.without_empty_steps());
    }
    let mid: Vec<Vec2> = p0.iter().zip(&p1).map(|(&a, &b)| a + nu * (b - a).dot(nu)).collect();
    Morph::new(vec![p0, mid, p1], vec![nu, s], carrier, Vec2::ZERO).map(|m| m.without_empty_steps())
}
