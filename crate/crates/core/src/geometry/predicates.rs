//! Orientation predicate with a floating-point filter and an exact fallback.

use super::Vec2;

const ORIENT_ERR_BOUND: f64 = 3.330_669_073_875_471_6e-16;

/// Sign of the signed area of triangle `(p, q, r)`: `1` for counterclockwise,
/// `-1` for clockwise, `0` for collinear. Exact for all finite inputs whose
/// products neither overflow nor underflow.
pub fn orient_sign(p: Vec2, q: Vec2, r: Vec2) -> i32 {
    let detleft = (p.x - r.x) * (q.y - r.y);
    let detright = (p.y - r.y) * (q.x - r.x);
    let det = detleft - detright;
    let bound = ORIENT_ERR_BOUND * (detleft.abs() + detright.abs());
    if det > bound {
        return 1;
    }
    if -det > bound {
        return -1;
    }
    if detleft == 0.0 && detright == 0.0 {
        return 0;
    }
    exact_sign(p, q, r)
}

/// Twice the signed area of `(p, q, r)` in plain floating point.
pub fn orient_value(p: Vec2, q: Vec2, r: Vec2) -> f64 {
    (q - p).cross(r - p)
}

fn two_product(a: f64, b: f64) -> (f64, f64) {
    let hi = a * b;
    (hi, a.mul_add(b, -hi))
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bv = s - a;
    let av = s - bv;
    (s, (a - av) + (b - bv))
}

/// Adds `b` to a nonoverlapping expansion stored in increasing magnitude.
fn grow(expansion: &mut Vec<f64>, b: f64) {
    let mut q = b;
    let mut out = 0;
    for i in 0..expansion.len() {
        let (s, h) = two_sum(q, expansion[i]);
        q = s;
        if h != 0.0 {
            expansion[out] = h;
            out += 1;
        }
    }
    expansion.truncate(out);
    if q != 0.0 {
        expansion.push(q);
    }
}

fn exact_sign(p: Vec2, q: Vec2, r: Vec2) -> i32 {
    let terms = [
        (p.x, q.y),
        (-p.x, r.y),
        (-r.x, q.y),
        (-p.y, q.x),
        (p.y, r.x),
        (r.y, q.x),
    ];
    let mut e = Vec::with_capacity(12);
    for (a, b) in terms {
        let (hi, lo) = two_product(a, b);
        grow(&mut e, lo);
        grow(&mut e, hi);
    }
    match e.last() {
        Some(v) if *v > 0.0 => 1,
        Some(v) if *v < 0.0 => -1,
        _ => 0,
    }
}
