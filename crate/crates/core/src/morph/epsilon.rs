//! Safe radius around a moving link vertex.

use crate::geometry::Vec2;
use crate::{Error, Result};

/// A moving point `v` and moving segments `(a, b)` over one linear step:
/// `v` goes from `v[0]` to `v[1]`, each segment from `(a0, b0)` to `(a1, b1)`
/// stored as `[a0, a1, b0, b1]`.
#[derive(Clone, Debug, Default)]
pub struct LinkTrajectory {
    pub v: [Vec2; 2],
    pub edges: Vec<[Vec2; 4]>,
}

type Poly = Vec<f64>;

fn poly_mul(a: &[f64], b: &[f64]) -> Poly {
    let mut r = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

fn poly_sub(a: &[f64], b: &[f64]) -> Poly {
    (0..a.len().max(b.len()))
        .map(|i| a.get(i).copied().unwrap_or(0.0) - b.get(i).copied().unwrap_or(0.0))
        .collect()
}

fn poly_deriv(a: &[f64]) -> Poly {
    if a.len() <= 1 {
        return vec![0.0];
    }
    a.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect()
}

fn poly_eval(a: &[f64], t: f64) -> f64 {
    a.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

/// Real roots of a polynomial (ascending coefficients) inside `[0, 1]`,
/// isolated between the roots of its derivative and refined by bisection.
fn roots_in_unit(p: &[f64]) -> Vec<f64> {
    let mut deg = p.len() - 1;
    while deg > 0 && p[deg] == 0.0 {
        deg -= 1;
    }
    let p = &p[..=deg];
    match deg {
        0 => return Vec::new(),
        1 => {
            let t = -p[0] / p[1];
            return if (0.0..=1.0).contains(&t) { vec![t] } else { Vec::new() };
        }
        _ => {}
    }
    let mut breaks = vec![0.0];
    breaks.extend(roots_in_unit(&poly_deriv(p)));
    breaks.push(1.0);
    let mut roots = Vec::new();
    for w in breaks.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (poly_eval(p, lo), poly_eval(p, hi));
        if flo == 0.0 {
            roots.push(lo);
            continue;
        }
        if flo.signum() == fhi.signum() {
            continue;
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if poly_eval(p, mid).signum() == flo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    if poly_eval(p, 1.0) == 0.0 {
        roots.push(1.0);
    }
    roots
}

fn line_distance(v: Vec2, a: Vec2, b: Vec2) -> f64 {
    let d = b - a;
    (d.cross(v - a)).abs() / d.norm()
}

/// Minimum distance from the moving point to the line through a moving
/// segment, over the whole step.
fn min_line_distance(v: [Vec2; 2], e: &[Vec2; 4]) -> f64 {
    let [a0, a1, b0, b1] = *e;
    let at = |p0: Vec2, p1: Vec2, t: f64| p0.lerp(p1, t);
    // B(t) = b - a and V(t) = v - a as linear vector polynomials.
    let bx = [b0.x - a0.x, (b1.x - a1.x) - (b0.x - a0.x)];
    let by = [b0.y - a0.y, (b1.y - a1.y) - (b0.y - a0.y)];
    let vx = [v[0].x - a0.x, (v[1].x - a1.x) - (v[0].x - a0.x)];
    let vy = [v[0].y - a0.y, (v[1].y - a1.y) - (v[0].y - a0.y)];
    let c = poly_sub(&poly_mul(&bx, &vy), &poly_mul(&by, &vx));
    let f = poly_mul(&c, &c);
    let g: Poly = {
        let gx = poly_mul(&bx, &bx);
        let gy = poly_mul(&by, &by);
        gx.iter().zip(&gy).map(|(x, y)| x + y).collect()
    };
    let num = poly_sub(&poly_mul(&poly_deriv(&f), &g), &poly_mul(&f, &poly_deriv(&g)));
    let mut candidates = vec![0.0, 1.0];
    candidates.extend(roots_in_unit(&num));
    candidates.extend(roots_in_unit(&c));
    candidates
        .into_iter()
        .map(|t| line_distance(at(v[0], v[1], t), at(a0, a1, t), at(b0, b1, t)))
        .fold(f64::INFINITY, f64::min)
}

/// A radius `ε` such that the disk of radius `ε` around the moving point
/// stays clear of every moving line over every step: 0.9 times the exact
/// minimum distance.
pub fn compute_epsilon(steps: &[LinkTrajectory]) -> Result<f64> {
    let mut best = f64::INFINITY;
    for s in steps {
        for e in &s.edges {
            if e[0] == e[2] || e[1] == e[3] {
                return Err(Error::Degenerate("link edge of zero length".into()));
            }
            best = best.min(min_line_distance(s.v, e));
        }
    }
    if !(best > 0.0) {
        return Err(Error::Degenerate("link vertex touches a link edge".into()));
    }
    if best.is_infinite() {
        return Err(Error::Precondition("no link edges to stay clear of".into()));
    }
    Ok(0.9 * best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64) -> Vec2 {
        Vec2::new(x, y)
    }

    #[test]
    fn static_configuration() {
        let s = LinkTrajectory {
            v: [v(0.0, 0.0); 2],
            edges: vec![[v(-1.0, 2.0), v(-1.0, 2.0), v(1.0, 2.0), v(1.0, 2.0)]],
        };
        let eps = compute_epsilon(&[s]).unwrap();
        assert!((eps - 1.8).abs() < 1e-12);
    }

    #[test]
    fn interior_minimum_matches_sampling() {
        // The segment sweeps past the point; its line rotates so the minimum
        // is interior.
        let s = LinkTrajectory {
            v: [v(0.0, 0.0), v(0.3, 0.0)],
            edges: vec![[v(-1.0, 1.0), v(0.5, 1.0), v(1.0, 1.5), v(2.5, 1.5)]],
        };
        let eps = compute_epsilon(std::slice::from_ref(&s)).unwrap();
        let sampled = (0..=100_000)
            .map(|i| {
                let t = i as f64 / 100_000.0;
                let e = &s.edges[0];
                line_distance(s.v[0].lerp(s.v[1], t), e[0].lerp(e[1], t), e[2].lerp(e[3], t))
            })
            .fold(f64::INFINITY, f64::min);
        assert!(eps <= 0.9 * sampled + 1e-12);
        assert!(eps >= 0.9 * sampled - 1e-9);
    }

    #[test]
    fn roots_of_cubic() {
        // (t - 0.2)(t - 0.5)(t - 0.9)
        let p = poly_mul(&poly_mul(&[-0.2, 1.0], &[-0.5, 1.0]), &[-0.9, 1.0]);
        let r = roots_in_unit(&p);
        assert_eq!(r.len(), 3);
        for (a, b) in r.iter().zip([0.2, 0.5, 0.9]) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
