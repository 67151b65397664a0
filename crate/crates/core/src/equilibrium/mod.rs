//! Tutte spring equilibria on the torus.
//!
//! A drawing is in equilibrium for positive edge weights `λ` when every
//! vertex is the weighted average of its neighbours' lifts:
//! `Σ λ(d) (p(head) + τ(d) - p(v)) = 0` over darts leaving `v`. With one
//! vertex pinned this is a symmetric positive definite Laplacian system.

mod cholesky;

pub use cholesky::{CholeskyFactor, SymmetricMatrix};

use crate::collapse::{collapse_graph, CollapseRecord};
use crate::geometry::Vec2;
use crate::graph::{DartId, Drawing, EdgeId, VertexId};
use crate::morph::MorphStep;
use crate::{Error, Result};

/// One positive weight per edge.
#[derive(Clone, Debug, PartialEq)]
pub struct Weights(Vec<f64>);

impl Weights {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::InvalidWeights(format!("edge {i} has weight {}", values[i])));
        }
        Ok(Weights(values))
    }

    pub fn uniform(num_edges: usize) -> Self {
        Weights(vec![1.0; num_edges])
    }

    pub fn get(&self, e: EdgeId) -> f64 {
        self.0[e.0]
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// A copy with the weight of `e` replaced.
    pub fn with(&self, e: EdgeId, w: f64) -> Result<Self> {
        let mut v = self.0.clone();
        v[e.0] = w;
        Weights::new(v)
    }
}

#[derive(Clone, Debug)]
pub struct EquilibriumSolution {
    pub positions: Vec<Vec2>,
    pub root: VertexId,
    /// Largest per-vertex force imbalance divided by the vertex's total weight.
    pub residual: f64,
}

/// Scaled force imbalance of `positions` as a drawing of `drawing`'s graph.
pub fn equilibrium_residual(drawing: &Drawing, weights: &Weights, positions: &[Vec2]) -> f64 {
    let g = drawing.graph();
    let mut worst = 0.0f64;
    for v in g.vertices() {
        let mut force = Vec2::ZERO;
        let mut total = 0.0;
        for &d in g.rotation(v) {
            if g.is_loop(d) {
                continue;
            }
            let w = weights.get(d.edge());
            force += (positions[g.head(d).0].shifted(drawing.tau(d)) - positions[v.0]) * w;
            total += w;
        }
        if total > 0.0 {
            worst = worst.max(force.x.abs().max(force.y.abs()) / total);
        }
    }
    worst
}

/// Solves for the equilibrium with `root` pinned at the origin.
pub fn solve_equilibrium(drawing: &Drawing, weights: &Weights, root: VertexId) -> Result<EquilibriumSolution> {
    solve_equilibrium_at(drawing, weights, root, Vec2::ZERO)
}

/// Solves for the equilibrium with `root` pinned at `anchor`.
pub fn solve_equilibrium_at(
    drawing: &Drawing,
    weights: &Weights,
    root: VertexId,
    anchor: Vec2,
) -> Result<EquilibriumSolution> {
    let g = drawing.graph();
    let n = g.num_vertices();
    if weights.len() != g.num_edges() {
        return Err(Error::InvalidWeights(format!("{} weights for {} edges", weights.len(), g.num_edges())));
    }
    if root.0 >= n {
        return Err(Error::Precondition(format!("root {root} out of range")));
    }
    // Reduced index: vertices other than the root.
    let idx = |v: usize| if v < root.0 { v } else { v - 1 };
    let mut a = SymmetricMatrix { diag: vec![0.0; n - 1], off: Vec::with_capacity(g.num_edges()) };
    let mut bx = vec![0.0; n - 1];
    let mut by = vec![0.0; n - 1];
    for e in g.edges() {
        let d = e.dart();
        let (t, h) = (g.tail(d).0, g.head(d).0);
        if t == h {
            continue;
        }
        let w = weights.get(e);
        let tau = drawing.tau(d).as_vec2();
        // Row t gains w*tau, row h gains -w*tau.
        for (v, other, sign) in [(t, h, 1.0), (h, t, -1.0)] {
            if v == root.0 {
                continue;
            }
            let i = idx(v);
            a.diag[i] += w;
            bx[i] += sign * w * tau.x;
            by[i] += sign * w * tau.y;
            if other == root.0 {
                bx[i] += w * anchor.x;
                by[i] += w * anchor.y;
            }
        }
        if t != root.0 && h != root.0 {
            a.off.push((idx(t), idx(h), -w));
        }
    }
    let factor = CholeskyFactor::new(&a)?;
    let x = factor.solve_refined(&a, &bx);
    let y = factor.solve_refined(&a, &by);
    let mut positions = Vec::with_capacity(n);
    for v in 0..n {
        positions.push(if v == root.0 { anchor } else { Vec2::new(x[idx(v)], y[idx(v)]) });
    }
    if positions.iter().any(|p| !p.is_finite()) {
        return Err(Error::Singular("non-finite solution".into()));
    }
    let residual = equilibrium_residual(drawing, weights, &positions);
    Ok(EquilibriumSolution { positions, root, residual })
}

/// Weights after collapsing edge `e`: each surviving edge carries the sum of
/// the weights of the edges merged into it, and `e` itself disappears.
pub fn merge_weights_for_collapse(weights: &Weights, e: EdgeId, record: &CollapseRecord) -> Result<Weights> {
    if record.dart.edge() != e {
        return Err(Error::Precondition(format!(
            "record collapses {} but weights were asked for {e}",
            record.dart.edge()
        )));
    }
    if weights.len() != record.edge_map.len() {
        return Err(Error::InvalidWeights(format!(
            "{} weights for {} edges",
            weights.len(),
            record.edge_map.len()
        )));
    }
    let mut merged = vec![0.0; record.new_edge_count];
    for (old, new) in record.edge_map.iter().enumerate() {
        if let Some(new) = new {
            merged[new.0] += weights.0[old];
        }
    }
    Weights::new(merged)
}

/// Result of driving the weight of one edge to infinity.
#[derive(Clone, Debug)]
pub struct SpringCollapse {
    /// Equilibrium drawing of the contracted graph.
    pub drawing: Drawing,
    pub weights: Weights,
    pub record: CollapseRecord,
    /// Linear motion of the original graph from the equilibrium to the limit,
    /// where the collapsed vertex sits on top of its target.
    pub step: MorphStep,
}

/// Contracts the edge of `d` in an equilibrium drawing and returns the limit
/// equilibrium as `λ(d) → ∞`. Vertices other than `tail(d)` keep their
/// meaning; the solution is pinned so that `head(d)` does not move.
pub fn spring_collapse_step(star: &Drawing, weights: &Weights, d: DartId) -> Result<SpringCollapse> {
    let g = star.graph();
    if g.is_loop(d) {
        return Err(Error::Precondition(format!("dart {} is a loop", d.0)));
    }
    let (contracted, record) = collapse_graph(star, d)?;
    let merged = merge_weights_for_collapse(weights, d.edge(), &record)?;
    let v_new = record.vertex_map[record.target.0];
    let sol = solve_equilibrium_at(&contracted, &merged, v_new, star.position(record.target))?;
    let drawing = contracted.with_positions(sol.positions)?;
    let end: Vec<Vec2> = g
        .vertices()
        .map(|w| {
            if w == record.removed {
                drawing.position(v_new).shifted(record.tau)
            } else {
                drawing.position(record.vertex_map[w.0])
            }
        })
        .collect();
    let step = MorphStep::new(star.positions().to_vec(), end);
    Ok(SpringCollapse { drawing, weights: merged, record, step })
}
