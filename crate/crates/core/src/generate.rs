//! Instance generators: lattice quotients, zippers and randomized
//! triangulations.

use crate::collapse::is_flippable;
use crate::equilibrium::{solve_equilibrium, Weights};
use crate::geometry::{orient_sign, triangulate_polygon, IVec2, Polygon, Vec2};
use crate::graph::{check_embedding, check_triangulation, face_corners, Drawing, EdgeId, Faces, VertexId};
use crate::{Error, Result};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Environment variable that overrides default seeds.
pub const SEED_ENV: &str = "TORUS_MORPH_SEED";

/// `default`, unless the seed environment variable holds an integer.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(default)
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn floor_div(x: i64, m: i64) -> i64 {
    x.div_euclid(m)
}

/// Quotient of the integer grid by the sublattice spanned by `(a, 0)` and
/// `(c, b)`, drawn by the linear map sending that sublattice to `Z^2`.
/// Edges follow `directions`.
fn lattice_with(a: usize, b: usize, c: usize, directions: &[(i64, i64)]) -> Result<Drawing> {
    if a == 0 || b == 0 || c >= a {
        return Err(Error::Precondition(format!("lattice needs a, b >= 1 and 0 <= c < a (got {a}, {b}, {c})")));
    }
    let (ai, bi, ci) = (a as i64, b as i64, c as i64);
    let id = |i: i64, j: i64| (j * ai + i) as usize;
    let pos = |i: i64, j: i64| {
        Vec2::new(i as f64 / a as f64 - (c as f64 * j as f64) / (a * b) as f64, j as f64 / b as f64)
    };
    let mut positions = Vec::with_capacity(a * b);
    for j in 0..bi {
        for i in 0..ai {
            positions.push(pos(i, j));
        }
    }
    let mut edges = Vec::new();
    for j in 0..bi {
        for i in 0..ai {
            for &(dx, dy) in directions {
                let (ti, tj) = (i + dx, j + dy);
                let k = floor_div(tj, bi);
                let tj2 = tj - k * bi;
                let ti1 = ti - k * ci;
                let m = floor_div(ti1, ai);
                let ti2 = ti1 - m * ai;
                edges.push((id(i, j), id(ti2, tj2), IVec2::new(m, k)));
            }
        }
    }
    Ok(Drawing::from_edges(positions, &edges)?.canonicalize())
}

/// Triangulated lattice quotient with `a * b` vertices and edge directions
/// `(1,0)`, `(0,1)`, `(1,1)`. Loop-free unless `a = 1` or `b = 1` with
/// `c ∈ {0, 1}`.
pub fn lattice(a: usize, b: usize, c: usize) -> Result<Drawing> {
    lattice_with(a, b, c, &[(1, 0), (0, 1), (1, 1)])
}

/// Four-regular quadrangulated lattice quotient (directions `(1,0)`, `(0,1)`).
pub fn square_grid(a: usize, b: usize, c: usize) -> Result<Drawing> {
    lattice_with(a, b, c, &[(1, 0), (0, 1)])
}

/// A zipper with `n` horizontal loops. Consecutive loops bound an annulus
/// split into two triangles; `twist` shifts the wrap-around annulus by whole
/// turns, giving non-isotopic drawings of the same graph.
pub fn zipper(n: usize, twist: i64) -> Result<Drawing> {
    if n == 0 {
        return Err(Error::Precondition("zipper needs at least one vertex".into()));
    }
    let x: Vec<f64> = (0..n).map(|k| (0.25 + 0.381_966_011_250_105_1 * k as f64).fract()).collect();
    let positions: Vec<Vec2> = (0..n).map(|k| Vec2::new(x[k], (k as f64 + 0.5) / n as f64)).collect();
    let mut edges = Vec::with_capacity(3 * n);
    for k in 0..n {
        let next = (k + 1) % n;
        let wrap = if next == 0 { 1 } else { 0 };
        let m = (x[k] - x[next] + 0.5).floor() as i64 + if wrap == 1 { twist } else { 0 };
        edges.push((k, k, IVec2::new(1, 0)));
        edges.push((k, next, IVec2::new(m, wrap)));
        edges.push((k, next, IVec2::new(m - 1, wrap)));
    }
    Drawing::from_edges(positions, &edges)
}

/// Three two-vertex zippers of the same graph that are pairwise not
/// isotopic.
pub fn twisted_zippers() -> Result<[Drawing; 3]> {
    Ok([zipper(2, 0)?, zipper(2, 1)?, zipper(2, 2)?])
}

/// Independent uniform weights in `[lo, hi]`.
pub fn random_weights<R: Rng>(num_edges: usize, rng: &mut R, lo: f64, hi: f64) -> Weights {
    Weights::new((0..num_edges).map(|_| rng.random_range(lo..=hi)).collect()).expect("positive range")
}

/// The equilibrium drawing of `drawing`'s graph and translations.
pub fn tutte_reembed(drawing: &Drawing, weights: &Weights) -> Result<Drawing> {
    let sol = solve_equilibrium(drawing, weights, VertexId(0))?;
    Ok(drawing.with_positions(sol.positions)?.canonicalize())
}

/// Triangles covering every face: the faces themselves, with ear-clipped
/// diagonals for larger faces. Each triangle is three `(vertex, offset)`
/// corners relative to the first.
fn carrier_triangles(drawing: &Drawing) -> Result<Vec<[(usize, IVec2); 3]>> {
    let g = drawing.graph();
    let faces = Faces::new(g);
    let mut tris = Vec::new();
    for walk in faces.walks() {
        let mut offs = Vec::with_capacity(walk.len());
        let mut off = IVec2::ZERO;
        for &d in walk {
            offs.push((g.tail(d).0, off));
            off += drawing.tau(d);
        }
        if walk.len() == 3 {
            tris.push([offs[0], offs[1], offs[2]]);
            continue;
        }
        let (corners, _) = face_corners(drawing, walk);
        let poly = Polygon::new(corners)?;
        let diags = triangulate_polygon(&poly)?;
        // Rebuild triangles by clipping the same ears.
        let mut list: Vec<usize> = (0..walk.len()).collect();
        for (a, b) in diags {
            let pos = (0..list.len())
                .find(|&i| {
                    let m = list.len();
                    let (p, q) = (list[(i + m - 1) % m], list[(i + 1) % m]);
                    (p.min(q), p.max(q)) == (a, b)
                })
                .ok_or_else(|| Error::Internal("ear clipping replay failed".into()))?;
            let m = list.len();
            tris.push([offs[list[(pos + m - 1) % m]], offs[list[pos]], offs[list[(pos + 1) % m]]]);
            list.remove(pos);
        }
        tris.push([offs[list[0]], offs[list[1]], offs[list[2]]]);
    }
    Ok(tris)
}

/// Moves every vertex by a random offset of at most `magnitude` in each
/// coordinate, rejecting moves that would invert a face of a triangulation
/// of the drawing, then accepts the result only if the full embedding check
/// passes (halving the magnitude otherwise). The result is isotopic to the
/// input.
pub fn jitter<R: Rng>(drawing: &Drawing, magnitude: f64, rng: &mut R) -> Result<Drawing> {
    let mut m = magnitude;
    for _ in 0..16 {
        let out = jitter_once(drawing, m, rng)?;
        if check_embedding(&out).is_valid() {
            return Ok(out);
        }
        m *= 0.5;
    }
    Ok(drawing.clone())
}

fn jitter_once<R: Rng>(drawing: &Drawing, magnitude: f64, rng: &mut R) -> Result<Drawing> {
    let tris = carrier_triangles(drawing)?;
    let n = drawing.num_vertices();
    let mut incident = vec![Vec::new(); n];
    for (t, tri) in tris.iter().enumerate() {
        for &(v, _) in tri {
            if incident[v].last() != Some(&t) {
                incident[v].push(t);
            }
        }
    }
    let positive = |pos: &[Vec2], tri: &[(usize, IVec2); 3]| {
        let p = |k: usize| pos[tri[k].0].shifted(tri[k].1);
        orient_sign(p(0), p(1), p(2)) > 0
    };
    let mut pos = drawing.positions().to_vec();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for v in order {
        for _ in 0..8 {
            let old = pos[v];
            pos[v] = old + Vec2::new(rng.random_range(-magnitude..=magnitude), rng.random_range(-magnitude..=magnitude));
            if incident[v].iter().all(|&t| positive(&pos, &tris[t])) {
                break;
            }
            pos[v] = old;
        }
    }
    drawing.with_positions(pos)
}

/// Replaces edge `e` of a triangulation by the other diagonal of its
/// quadrilateral. The caller checks flippability.
fn flip(drawing: &Drawing, e: EdgeId) -> Result<Drawing> {
    let g = drawing.graph();
    let d = e.dart();
    let l1 = g.face_next(d);
    let r1 = g.face_next(d.rev());
    // z is the apex left of d (head of l1), w the apex right of d (head of r1),
    // both relative to tail(d).
    let z = g.head(l1);
    let tz = drawing.tau(d) + drawing.tau(l1);
    let w = g.head(r1);
    let tw = drawing.tau(r1);
    let mut edges = drawing.edge_list();
    edges[e.0] = (w.0, z.0, tz - tw);
    Drawing::from_edges(drawing.positions().to_vec(), &edges)
}

#[derive(Clone, Copy, Debug)]
pub struct RandomTriangulationOptions {
    pub loopless: bool,
    /// Number of attempted random edge flips.
    pub flips: usize,
}

impl Default for RandomTriangulationOptions {
    fn default() -> Self {
        RandomTriangulationOptions { loopless: true, flips: 0 }
    }
}

/// A random triangulation with `n` vertices: a lattice quotient, randomly
/// flipped, then drawn as the equilibrium of random weights in `[0.1, 10]`.
pub fn random_triangulation<R: Rng>(n: usize, rng: &mut R, opts: RandomTriangulationOptions) -> Result<Drawing> {
    if n == 0 || (opts.loopless && n < 3) {
        return Err(Error::Precondition(format!("no generator for {n} vertices")));
    }
    let divisors: Vec<usize> = (1..=n).filter(|b| n.is_multiple_of(*b) && b * b <= n).collect();
    let b = *divisors.choose(rng).unwrap();
    let a = n / b;
    let c = if b == 1 && opts.loopless {
        rng.random_range(2..a.max(3))
    } else {
        rng.random_range(0..a)
    };
    let mut d = lattice(a, b, c)?;
    d = tutte_reembed(&d, &random_weights(d.graph().num_edges(), rng, 0.1, 10.0))?;
    let flips = if opts.flips == 0 { 3 * n } else { opts.flips };
    for _ in 0..flips {
        let e = EdgeId(rng.random_range(0..d.graph().num_edges()));
        if !is_flippable(&d, e).unwrap_or(false) {
            continue;
        }
        let next = flip(&d, e)?;
        let ne = next.graph().edge_ends()[e.0];
        if opts.loopless && ne.0 == ne.1 {
            continue;
        }
        if check_triangulation(&next).is_ok() {
            d = next;
        }
    }
    tutte_reembed(&d, &random_weights(d.graph().num_edges(), rng, 0.1, 10.0))
}

/// A random gauge change and lattice translation of the same drawing.
pub fn random_regauge<R: Rng>(drawing: &Drawing, rng: &mut R) -> Result<Drawing> {
    let pi: Vec<IVec2> = (0..drawing.num_vertices())
        .map(|_| IVec2::new(rng.random_range(-3..=3), rng.random_range(-3..=3)))
        .collect();
    drawing.with_rep(drawing.rep().regauged(drawing.graph(), &pi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::classify_drawing;

    #[test]
    fn lattices_are_valid() {
        for (a, b, c) in [(1, 1, 0), (3, 3, 1), (4, 2, 3), (5, 1, 2), (2, 3, 1)] {
            let d = lattice(a, b, c).unwrap();
            assert!(check_embedding(&d).is_valid(), "lattice {a} {b} {c}");
            assert!(classify_drawing(&d).is_triangulation);
            let sq = square_grid(a.max(2), b.max(2), c.min(a.max(2) - 1)).unwrap();
            assert!(check_embedding(&sq).is_valid());
        }
    }

    #[test]
    fn one_vertex_lattice() {
        let d = lattice(1, 1, 0).unwrap();
        let c = classify_drawing(&d);
        assert_eq!(d.graph().num_edges(), 3);
        assert_eq!(c.num_faces, 2);
        assert!(c.is_zipper);
    }

    #[test]
    fn zippers_are_valid() {
        for n in 1..6 {
            for twist in -1..=2 {
                let z = zipper(n, twist).unwrap();
                assert!(check_embedding(&z).is_valid(), "zipper {n} {twist}");
                assert!(classify_drawing(&z).is_zipper);
            }
        }
    }

    #[test]
    fn random_triangulations_are_loopless() {
        let mut rng = rng_from_seed(7);
        for n in [3, 4, 7, 12, 30] {
            let d = random_triangulation(n, &mut rng, RandomTriangulationOptions::default()).unwrap();
            assert!(check_embedding(&d).is_valid());
            assert!(classify_drawing(&d).loop_vertices.is_empty());
            let j = jitter(&d, 0.05, &mut rng).unwrap();
            assert!(check_embedding(&j).is_valid());
        }
    }
}
