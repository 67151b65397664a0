//! Sparse Cholesky factorization with a minimum-degree ordering.

use crate::{Error, Result};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// A symmetric matrix given by its diagonal and strictly-off-diagonal
/// entries (each unordered pair once; duplicates are summed).
#[derive(Clone, Debug, Default)]
pub struct SymmetricMatrix {
    pub diag: Vec<f64>,
    pub off: Vec<(usize, usize, f64)>,
}

/// `L L^T = P A P^T` for a symmetric positive definite `A`.
#[derive(Clone, Debug)]
pub struct CholeskyFactor {
    order: Vec<usize>,
    diag: Vec<f64>,
    rows: Vec<Vec<usize>>,
    vals: Vec<Vec<f64>>,
}

fn minimum_degree_order(n: usize, adj: &mut [Vec<usize>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut eliminated = vec![false; n];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..n).map(|v| Reverse((adj[v].len(), v))).collect();
    let mut order = Vec::with_capacity(n);
    let mut structs = vec![Vec::new(); n];
    while let Some(Reverse((deg, v))) = heap.pop() {
        if eliminated[v] || deg != adj[v].len() {
            continue;
        }
        eliminated[v] = true;
        order.push(v);
        let nbrs = std::mem::take(&mut adj[v]);
        for &w in &nbrs {
            let mut merged = Vec::with_capacity(adj[w].len() + nbrs.len());
            let (a, b) = (&adj[w], &nbrs);
            let (mut i, mut j) = (0, 0);
            while i < a.len() || j < b.len() {
                let x = if j >= b.len() || (i < a.len() && a[i] <= b[j]) {
                    let x = a[i];
                    if j < b.len() && b[j] == x {
                        j += 1;
                    }
                    i += 1;
                    x
                } else {
                    j += 1;
                    b[j - 1]
                };
                if x != v && x != w {
                    merged.push(x);
                }
            }
            adj[w] = merged;
            heap.push(Reverse((adj[w].len(), w)));
        }
        structs[v] = nbrs;
    }
    (order, structs)
}

impl CholeskyFactor {
    pub fn new(a: &SymmetricMatrix) -> Result<Self> {
        let n = a.diag.len();
        let mut adj = vec![Vec::new(); n];
        let mut entries: Vec<(usize, usize, f64)> = a
            .off
            .iter()
            .filter(|e| e.0 != e.1)
            .map(|&(i, j, v)| (i.min(j), i.max(j), v))
            .collect();
        entries.sort_by_key(|x| (x.0, x.1));
        let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(entries.len());
        for (i, j, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == i && last.1 == j => last.2 += v,
                _ => merged.push((i, j, v)),
            }
        }
        for &(i, j, _) in &merged {
            adj[i].push(j);
            adj[j].push(i);
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        let (order, structs) = minimum_degree_order(n, &mut adj);
        let mut pos = vec![0; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let rows: Vec<Vec<usize>> = order
            .iter()
            .map(|&v| {
                let mut r: Vec<usize> = structs[v].iter().map(|&w| pos[w]).collect();
                r.sort_unstable();
                r
            })
            .collect();

        // Lower-triangle entries of the permuted matrix, by column.
        let mut acols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for &(i, j, v) in &merged {
            let (pi, pj) = (pos[i], pos[j]);
            acols[pi.min(pj)].push((pi.max(pj), v));
        }
        let mut row_of: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (k, r) in rows.iter().enumerate() {
            for &i in r {
                row_of[i].push(k);
            }
        }
        let mut ptr = vec![0usize; n];
        let mut diag = vec![0.0; n];
        let mut vals: Vec<Vec<f64>> = rows.iter().map(|r| vec![0.0; r.len()]).collect();
        let mut work = vec![0.0; n];
        let scale = a.diag.iter().fold(0.0f64, |m, &d| m.max(d.abs()));
        for j in 0..n {
            work[j] = a.diag[order[j]];
            for &(i, v) in &acols[j] {
                work[i] += v;
            }
            for &k in &row_of[j] {
                let p = ptr[k];
                let ljk = vals[k][p];
                for idx in p + 1..rows[k].len() {
                    work[rows[k][idx]] -= vals[k][idx] * ljk;
                }
                work[j] -= ljk * ljk;
                ptr[k] = p + 1;
            }
            let d = work[j];
            if !(d > scale * 1e-14) {
                return Err(Error::Singular(format!("pivot {d:e} at column {j}")));
            }
            let ljj = d.sqrt();
            diag[j] = ljj;
            work[j] = 0.0;
            for (idx, &i) in rows[j].iter().enumerate() {
                vals[j][idx] = work[i] / ljj;
                work[i] = 0.0;
            }
        }
        Ok(CholeskyFactor { order, diag, rows, vals })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Number of stored off-diagonal entries of `L`.
    pub fn fill(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Solves `a x = b` followed by one step of iterative refinement; `a`
    /// must be the matrix this factor was built from.
    pub fn solve_refined(&self, a: &SymmetricMatrix, b: &[f64]) -> Vec<f64> {
        let mut x = self.solve(b);
        let mut r: Vec<f64> = b.iter().zip(a.diag.iter().zip(&x)).map(|(b, (d, x))| b - d * x).collect();
        for &(i, j, v) in &a.off {
            if i != j {
                r[i] -= v * x[j];
                r[j] -= v * x[i];
            }
        }
        for (xi, ci) in x.iter_mut().zip(self.solve(&r)) {
            *xi += ci;
        }
        x
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut y: Vec<f64> = self.order.iter().map(|&v| b[v]).collect();
        for j in 0..n {
            y[j] /= self.diag[j];
            let yj = y[j];
            for (idx, &i) in self.rows[j].iter().enumerate() {
                y[i] -= self.vals[j][idx] * yj;
            }
        }
        for j in (0..n).rev() {
            let mut s = y[j];
            for (idx, &i) in self.rows[j].iter().enumerate() {
                s -= self.vals[j][idx] * y[i];
            }
            y[j] = s / self.diag[j];
        }
        let mut x = vec![0.0; n];
        for (p, &v) in self.order.iter().enumerate() {
            x[v] = y[p];
        }
        x
    }
}
