//! One-sided morph from a triangulation to an equilibrium drawing of the
//! same graph.
//!
//! The drawing is collapsed vertex by vertex until a zipper remains. The
//! equilibrium is contracted along the same edges by letting their weights
//! grow without bound. The morph is then assembled bottom-up: each removed
//! vertex `u` first moves a little towards its target `v`, rides along with
//! `v` while the smaller graph morphs, steps aside in the direction of the
//! contracted spring, and finally joins the relaxation back to the
//! equilibrium of its level.

use super::{zipper_morph, Carrier, Morph};
use crate::collapse::{collapse_graph, direct_collapse, find_good_vertex, GoodVertex};
use crate::equilibrium::{merge_weights_for_collapse, solve_equilibrium_at, Weights};
use crate::geometry::{orient_sign, IVec2, Vec2};
use crate::graph::{DartId, Drawing};
use crate::{Error, Result};

/// One collapse, with vertices named by their ids in the original graph.
#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub removed: usize,
    pub target: usize,
    pub tau: IVec2,
    /// Heads of the removed vertex's darts in rotation order starting with
    /// the collapsed dart, with their translations.
    pub link: Vec<(usize, IVec2)>,
    /// The collapsed dart in the graph of this level.
    pub dart: DartId,
}

/// Collapses good vertices until a zipper remains. Returns the levels, the
/// zipper and the original ids of its vertices.
pub(crate) fn collapse_sequence(drawing: &Drawing) -> Result<(Vec<Level>, Drawing, Vec<usize>)> {
    let mut cur = drawing.clone();
    let mut orig: Vec<usize> = (0..drawing.num_vertices()).collect();
    let mut levels = Vec::new();
    loop {
        let (u, d) = match find_good_vertex(&cur)? {
            GoodVertex::Zipper => break,
            GoodVertex::Collapse { vertex, dart } => (vertex, dart),
        };
        let g = cur.graph();
        let rot = g.rotation(u);
        let s = g.slot(d);
        let link = (0..rot.len())
            .map(|i| {
                let x = rot[(s + i) % rot.len()];
                (orig[g.head(x).0], cur.tau(x))
            })
            .collect();
        levels.push(Level { removed: orig[u.0], target: orig[g.head(d).0], tau: cur.tau(d), link, dart: d });
        let collapsed = direct_collapse(&cur, d)?;
        orig.remove(u.0);
        cur = collapsed.drawing;
    }
    Ok((levels, cur, orig))
}

/// Equilibria of every level, with motions between consecutive levels
/// projected onto the contracted edge's direction so that each relaxation
/// step is exactly parallel. Indexed by level, then original vertex id.
fn contracted_equilibria(
    drawing: &Drawing,
    weights: &Weights,
    eq_top: &[Vec2],
    levels: &[Level],
) -> Result<(Vec<Vec<Vec2>>, Vec<Vec2>)> {
    let n = drawing.num_vertices();
    let mut star = drawing.with_positions(eq_top.to_vec())?;
    let mut lambda = weights.clone();
    let mut orig: Vec<usize> = (0..n).collect();
    let mut tilde = vec![eq_top.to_vec()];
    let mut sigmas = Vec::with_capacity(levels.len());
    for lev in levels {
        let cur = tilde.last().unwrap();
        let sigma = (cur[lev.target].shifted(lev.tau) - cur[lev.removed])
            .normalized()
            .ok_or_else(|| Error::Degenerate("contracted edge has zero length in equilibrium".into()))?;
        let (contracted, rec) = collapse_graph(&star, lev.dart)?;
        let merged = merge_weights_for_collapse(&lambda, lev.dart.edge(), &rec)?;
        let v_new = rec.vertex_map[rec.target.0];
        let sol = solve_equilibrium_at(&contracted, &merged, v_new, star.position(rec.target))?;
        let mut next = cur.clone();
        for old in 0..star.num_vertices() {
            if old == rec.removed.0 {
                continue;
            }
            let o = orig[old];
            let delta = sol.positions[rec.vertex_map[old].0] - star.positions()[old];
            next[o] = cur[o] + sigma * delta.dot(sigma);
        }
        orig.remove(rec.removed.0);
        star = contracted.with_positions(sol.positions)?;
        lambda = merged;
        tilde.push(next);
        sigmas.push(sigma);
    }
    Ok((tilde, sigmas))
}

fn for_each_edge(points: &[Vec2], mut f: impl FnMut(Vec2, Vec2)) {
    let k = points.len();
    for i in 0..k {
        f(points[i], points[(i + 1) % k]);
    }
}

/// The part of a convex polygon where `side` is nonnegative, for an affine
/// `side`.
fn clip_by(poly: &[Vec2], side: impl Fn(Vec2) -> f64) -> Vec<Vec2> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        let (sp, sq) = (side(p), side(q));
        if sp >= 0.0 {
            out.push(p);
        }
        if (sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0) {
            out.push(p + (q - p) * (sp / (sp - sq)));
        }
    }
    out.dedup();
    while out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// The part of a convex counterclockwise polygon left of the line `a b`.
fn clip_half_plane(poly: &[Vec2], a: Vec2, b: Vec2) -> Vec<Vec2> {
    let d = b - a;
    clip_by(poly, |p| d.cross(p - a))
}

/// Kernel of a counterclockwise polygon, as a convex polygon.
fn link_kernel(points: &[Vec2]) -> Vec<Vec2> {
    let (mut lo, mut hi) = (points[0], points[0]);
    for p in points {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let mut region = vec![lo, Vec2::new(hi.x, lo.y), hi, Vec2::new(lo.x, hi.y)];
    for_each_edge(points, |a, b| region = clip_half_plane(&region, a, b));
    region
}

/// Parameters `t` with `q + t s` in the closed convex polygon `poly`.
fn line_interval(poly: &[Vec2], q: Vec2, s: Vec2) -> Option<(f64, f64)> {
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    let mut ok = true;
    for_each_edge(poly, |a, b| {
        let d = b - a;
        if d.norm() <= 1e-12 * (1.0 + a.norm()) {
            return;
        }
        let (c0, c1) = (d.cross(q - a), d.cross(s));
        if c1 > 0.0 {
            lo = lo.max(-c0 / c1);
        } else if c1 < 0.0 {
            hi = hi.min(-c0 / c1);
        } else if c0 < 0.0 {
            ok = false;
        }
    });
    (ok && lo <= hi && lo.is_finite() && hi.is_finite()).then_some((lo, hi))
}

fn strictly_inside(points: &[Vec2], q: Vec2) -> bool {
    let k = points.len();
    (0..k).all(|i| orient_sign(points[i], points[(i + 1) % k], q) > 0)
}

/// Morph from `drawing`, a valid triangulation, to `eq_top`, the equilibrium
/// of its graph under `weights`.
pub fn one_sided_morph(drawing: &Drawing, weights: &Weights, eq_top: &[Vec2]) -> Result<Morph> {
    let n = drawing.num_vertices();
    let (levels, base, base_orig) = collapse_sequence(drawing)?;
    let (tilde, sigmas) = contracted_equilibria(drawing, weights, eq_top, &levels)?;
    let big_l = levels.len();
    let base_star = base.with_positions(base_orig.iter().map(|&o| tilde[big_l][o]).collect())?;
    let zm = zipper_morph(&base, &base_star)?;
    let z = zm.num_steps();
    let k_steps = 3 * big_l + z;
    let end_frame = |l: usize| big_l + z + 2 * (big_l - l);

    let p0 = drawing.positions();
    let mut traj = vec![vec![Vec2::ZERO; k_steps + 1]; n];
    let mut dirs = vec![Vec2::ZERO; k_steps];
    for (i, &o) in base_orig.iter().enumerate() {
        for f in 0..=big_l {
            traj[o][f] = p0[o];
        }
        for (s, frame) in zm.keyframes().iter().enumerate() {
            traj[o][big_l + s] = frame[i];
        }
    }
    dirs[big_l..big_l + z].copy_from_slice(zm.directions());
    let mut alive = base_orig.clone();

    for l in (0..big_l).rev() {
        let lev = &levels[l];
        let u = lev.removed;
        for f in 0..=l {
            traj[u][f] = p0[u];
        }
        let (f0, f1) = (l + 1, end_frame(l + 1));
        let link_at = |traj: &Vec<Vec<Vec2>>, f: usize| -> Vec<Vec2> {
            lev.link.iter().map(|&(w, t)| traj[w][f].shifted(t)).collect()
        };
        let frames: Vec<Vec<Vec2>> = (f0..=f1).map(|f| link_at(&traj, f)).collect();

        // Positions reachable by u at each frame: inside the link's kernel,
        // moving only along the direction of each step.
        let mut reach = vec![link_kernel(&frames[0])];
        for s in f0..f1 {
            let prev = reach.last().unwrap();
            let sigma = dirs[s];
            let mut next = link_kernel(&frames[s + 1 - f0]);
            if sigma == Vec2::ZERO {
                for_each_edge(prev, |a, b| next = clip_half_plane(&next, a, b));
            } else {
                let n = sigma.perp();
                let (lo, hi) = prev.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &q| {
                    (lo.min(n.dot(q)), hi.max(n.dot(q)))
                });
                next = clip_by(&next, |p| n.dot(p) - lo);
                next = clip_by(&next, |p| hi - n.dot(p));
            }
            if next.len() < 3 {
                return Err(Error::Internal(format!("vertex {u} cannot follow its link")));
            }
            reach.push(next);
        }
        let last_set = reach.last().unwrap();
        let mut q = last_set.iter().fold(Vec2::ZERO, |acc, &p| acc + p) * (1.0 / last_set.len() as f64);
        let mut us = vec![q; reach.len()];
        for s in (f0..f1).rev() {
            let sigma = dirs[s];
            if sigma != Vec2::ZERO {
                let (lo, hi) = line_interval(&reach[s - f0], q, sigma)
                    .ok_or_else(|| Error::Internal(format!("vertex {u} lost its riding path")))?;
                q += sigma * (0.5 * (lo + hi));
            }
            us[s - f0] = q;
        }
        for (i, (p, &q)) in frames.iter().zip(&us).enumerate() {
            if !strictly_inside(p, q) {
                return Err(Error::Internal(format!("vertex {u} leaves its link at frame {}", f0 + i)));
            }
            traj[u][f0 + i] = q;
        }
        dirs[l] = (us[0] - p0[u]).normalized().unwrap_or(Vec2::ZERO);

        // Step aside onto the line of the contracted spring, then relax.
        let sigma = sigmas[l];
        let last = frames.last().unwrap();
        let (lo, hi) = line_interval(&link_kernel(last), last[0], sigma)
            .ok_or_else(|| Error::Internal(format!("spring direction leaves the kernel at {u}")))?;
        let aside = last[0] + sigma * (0.5 * (lo + hi));
        if !strictly_inside(last, aside) {
            return Err(Error::Internal(format!("spring direction leaves the kernel at {u}")));
        }
        let (fb, fc) = (f1 + 1, f1 + 2);
        for &w in &alive {
            traj[w][fb] = traj[w][f1];
            traj[w][fc] = tilde[l][w];
        }
        traj[u][fb] = aside;
        traj[u][fc] = tilde[l][u];
        dirs[f1] = (aside - us[us.len() - 1]).normalized().unwrap_or(Vec2::ZERO);
        dirs[fb] = sigma;
        alive.push(u);
    }

    let keyframes: Vec<Vec<Vec2>> = (0..=k_steps).map(|f| (0..n).map(|w| traj[w][f]).collect()).collect();
    let carrier = vec![Carrier { first_step: 0, diagonals: Vec::new() }];
    Ok(Morph::new(keyframes, dirs, carrier, Vec2::ZERO)?.without_empty_steps())
}
