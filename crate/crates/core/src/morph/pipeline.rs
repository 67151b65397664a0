//! Morphs between isotopic embeddings.

use super::{Diagonal, Morph};
use crate::equilibrium::{solve_equilibrium, Weights};
use crate::geometry::{orient_sign, triangulate_polygon, Polygon, Vec2};
use crate::graph::{check_triangulation, face_corners, Drawing, Faces, VertexId};
use crate::isotopy::{isotopy_verdict, normalize_representation, IsotopyVerdict};
use crate::{Error, Result};

pub use super::plan::one_sided_morph;

#[derive(Clone, Debug, Default)]
pub struct MorphOptions {
    /// Spring weights for the intermediate equilibrium; uniform when absent.
    /// Only used when both inputs are triangulations of the same graph.
    pub weights: Option<Weights>,
}

/// The second drawing re-expressed with the first drawing's translations.
fn normalized_target(g0: &Drawing, g1: &Drawing) -> Result<Drawing> {
    if !g0.graph().same_darts(g1.graph()) {
        return Err(Error::GraphMismatch("the drawings have different darts".into()));
    }
    if let IsotopyVerdict::NotIsotopic { witness } = isotopy_verdict(g0, g1)? {
        return Err(Error::NotIsotopic { witness: witness.0 });
    }
    let (rep, _) = normalize_representation(g0.rep(), g1.rep(), g0.graph())?;
    g0.with_rep(rep)
}

/// Morphs one triangulation into an isotopic one. Both sides are driven to
/// the same equilibrium; the second half is played backwards. The last
/// keyframe equals the second drawing after normalizing its translations to
/// those of the first.
pub fn morph_triangulations(g0: &Drawing, g1: &Drawing, opts: &MorphOptions) -> Result<Morph> {
    check_triangulation(g0).map_err(|e| Error::InvalidEmbedding(format!("first drawing: {e}")))?;
    check_triangulation(g1).map_err(|e| Error::InvalidEmbedding(format!("second drawing: {e}")))?;
    let g1n = normalized_target(g0, g1)?;
    let weights = match &opts.weights {
        Some(w) => w.clone(),
        None => Weights::uniform(g0.graph().num_edges()),
    };
    let eq = solve_equilibrium(g0, &weights, VertexId(0))?;
    let m0 = one_sided_morph(g0, &weights, &eq.positions)?;
    let m1 = one_sided_morph(&g1n, &weights, &eq.positions)?;
    Ok(m0.concat(&m1.reversed())?.without_empty_steps())
}

/// Drawing with extra edges whose rotation is read off the geometry.
pub fn add_diagonals(drawing: &Drawing, diagonals: &[Diagonal]) -> Result<Drawing> {
    let mut edges = drawing.edge_list();
    edges.extend(diagonals.iter().map(|d| (d.tail.0, d.head.0, d.tau)));
    Drawing::from_edges(drawing.positions().to_vec(), &edges)
}

fn diagonals_of(drawing: &Drawing, walk: &[crate::DartId], pairs: &[(usize, usize)]) -> Vec<Diagonal> {
    let g = drawing.graph();
    let mut offsets = Vec::with_capacity(walk.len());
    let mut off = crate::IVec2::ZERO;
    for &d in walk {
        offsets.push(off);
        off += drawing.tau(d);
    }
    pairs
        .iter()
        .map(|&(i, j)| Diagonal { tail: g.tail(walk[i]), head: g.tail(walk[j]), tau: offsets[j] - offsets[i] })
        .collect()
}

/// Ear clipping that only cuts ears valid in both polygons.
fn common_ears(a: &Polygon, b: &Polygon) -> Option<Vec<(usize, usize)>> {
    let (va, vb) = (a.vertices(), b.vertices());
    let mut list: Vec<usize> = (0..va.len()).collect();
    let mut out = Vec::new();
    let ear = |vs: &[Vec2], list: &[usize], i: usize| {
        let m = list.len();
        let (ip, ic, inx) = (list[(i + m - 1) % m], list[i], list[(i + 1) % m]);
        let (p, c, n) = (vs[ip], vs[ic], vs[inx]);
        orient_sign(p, c, n) > 0
            && list.iter().filter(|&&j| j != ip && j != ic && j != inx).all(|&j| {
                let q = vs[j];
                !(orient_sign(p, c, q) >= 0 && orient_sign(c, n, q) >= 0 && orient_sign(n, p, q) >= 0)
            })
    };
    while list.len() > 3 {
        let m = list.len();
        let pos = (1..m).chain(0..1).find(|&i| ear(va, &list, i) && ear(vb, &list, i))?;
        let (x, y) = (list[(pos + m - 1) % m], list[(pos + 1) % m]);
        out.push((x.min(y), x.max(y)));
        list.remove(pos);
    }
    Some(out)
}

fn face_polygons(drawing: &Drawing, walk: &[crate::DartId]) -> Result<Polygon> {
    let (corners, _) = face_corners(drawing, walk);
    let poly = Polygon::new(corners)?;
    if poly.orientation() <= 0 {
        return Err(Error::InvalidEmbedding("face is not counterclockwise".into()));
    }
    Ok(poly)
}

/// Triangulates every non-triangular face of `drawing` by ear clipping.
fn triangulate_faces(drawing: &Drawing) -> Result<Vec<Diagonal>> {
    let faces = Faces::new(drawing.graph());
    let mut diags = Vec::new();
    for walk in faces.walks().iter().filter(|w| w.len() > 3) {
        let poly = face_polygons(drawing, walk)?;
        diags.extend(diagonals_of(drawing, walk, &triangulate_polygon(&poly)?));
    }
    Ok(diags)
}

/// Diagonals valid in both drawings, found by simultaneous ear clipping.
fn common_triangulation(g0: &Drawing, g1: &Drawing) -> Result<Option<Vec<Diagonal>>> {
    let faces = Faces::new(g0.graph());
    let mut diags = Vec::new();
    for walk in faces.walks().iter().filter(|w| w.len() > 3) {
        let (a, b) = (face_polygons(g0, walk)?, face_polygons(g1, walk)?);
        match common_ears(&a, &b) {
            Some(pairs) => diags.extend(diagonals_of(g0, walk, &pairs)),
            None => return Ok(None),
        }
    }
    Ok(Some(diags))
}

/// Morphs between isotopic embeddings with arbitrary faces.
///
/// Faces are triangulated by diagonals valid in both drawings when such a
/// common triangulation is found; the morph then carries that single
/// triangulation. Otherwise each drawing is triangulated on its own and
/// morphed to the common equilibrium of the original graph, where both
/// triangulations are valid since all faces are convex.
pub fn morph_embeddings(g0: &Drawing, g1: &Drawing, opts: &MorphOptions) -> Result<Morph> {
    let faces = Faces::new(g0.graph());
    if faces.walks().iter().all(|w| w.len() == 3) {
        return morph_triangulations(g0, g1, opts);
    }
    let g1n = normalized_target(g0, g1)?;
    let plain = MorphOptions::default();
    if let Some(diags) = common_triangulation(g0, &g1n)? {
        let t0 = add_diagonals(g0, &diags)?;
        let t1 = t0.with_positions(g1n.positions().to_vec())?;
        if check_triangulation(&t1).is_ok() {
            return Ok(morph_triangulations(&t0, &t1, &plain)?.with_carrier(diags));
        }
    }
    two_leg_morph(g0, &g1n)
}

/// Morph through the uniform equilibrium of the original graph, with each
/// leg carried by its own triangulation. `g1` must already share `g0`'s
/// translations.
pub(crate) fn two_leg_morph(g0: &Drawing, g1n: &Drawing) -> Result<Morph> {
    let plain = MorphOptions::default();
    let star = solve_equilibrium(g0, &Weights::uniform(g0.graph().num_edges()), VertexId(0))?;
    let d0 = triangulate_faces(g0)?;
    let d1 = triangulate_faces(g1n)?;
    let t0 = add_diagonals(g0, &d0)?;
    let t0s = t0.with_positions(star.positions.clone())?;
    let t1 = add_diagonals(g1n, &d1)?;
    let t1s = t1.with_positions(star.positions.clone())?;
    let first = morph_triangulations(&t0, &t0s, &plain)?.with_carrier(d0);
    let second = morph_triangulations(&t1, &t1s, &plain)?.with_carrier(d1);
    Ok(first.concat(&second.reversed())?.without_empty_steps())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{jitter, rng_from_seed, square_grid};
    use crate::morph::verify_morph;

    #[test]
    fn two_leg_fallback_verifies() {
        let mut rng = rng_from_seed(3);
        let base = square_grid(3, 3, 1).unwrap();
        let g0 = jitter(&base, 0.08, &mut rng).unwrap();
        let g1 = jitter(&base, 0.08, &mut rng).unwrap();
        let m = two_leg_morph(&g0, &g1).unwrap();
        assert!(!m.carriers().is_empty() && m.carriers().len() <= 2);
        let report = verify_morph(&g0, &g1, &m);
        assert!(report.is_valid(), "{:?}", report.failures);
    }

    #[test]
    fn common_ears_of_a_square_and_a_kite() {
        let sq = Polygon::new(vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(1.0, 1.0), Vec2::new(0.0, 1.0)]).unwrap();
        // Reflex at index 2: only the diagonal (0, 2) is valid.
        let kite = Polygon::new(vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.3, 0.3), Vec2::new(0.0, 1.0)]).unwrap();
        assert_eq!(common_ears(&sq, &kite), Some(vec![(0, 2)]));
    }
}
