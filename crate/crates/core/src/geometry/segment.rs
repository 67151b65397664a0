//! Segment contact tests in the plane and on the torus.

use super::{orient_sign, IVec2, Vec2};

/// A segment in the plane given by its start and displacement, standing for
/// all of its integer translates on the torus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LiftedSegment {
    pub start: Vec2,
    pub disp: Vec2,
}

impl LiftedSegment {
    pub fn new(start: Vec2, disp: Vec2) -> Self {
        LiftedSegment { start, disp }
    }

    pub fn end(&self) -> Vec2 {
        self.start + self.disp
    }
}

/// True when closed segments `a0a1` and `b0b1` share a point that is not a
/// common endpoint: a proper crossing, a T-contact, or a collinear overlap.
pub fn segments_conflict(a0: Vec2, a1: Vec2, b0: Vec2, b1: Vec2) -> bool {
    let o1 = orient_sign(a0, a1, b0);
    let o2 = orient_sign(a0, a1, b1);
    if o1 * o2 > 0 {
        return false;
    }
    let o3 = orient_sign(b0, b1, a0);
    let o4 = orient_sign(b0, b1, a1);
    if o3 * o4 > 0 {
        return false;
    }
    if o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0 {
        return collinear_overlap(a0, a1, b0, b1);
    }
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    // The segments meet in exactly one point, an endpoint of one of them.
    let (x, other) = if o1 == 0 {
        (b0, (a0, a1))
    } else if o2 == 0 {
        (b1, (a0, a1))
    } else if o3 == 0 {
        (a0, (b0, b1))
    } else {
        (a1, (b0, b1))
    };
    x != other.0 && x != other.1
}

fn collinear_overlap(a0: Vec2, a1: Vec2, b0: Vec2, b1: Vec2) -> bool {
    let use_x = (a1.x - a0.x).abs() + (b1.x - b0.x).abs() >= (a1.y - a0.y).abs() + (b1.y - b0.y).abs();
    let key = |p: Vec2| if use_x { p.x } else { p.y };
    let (alo, ahi) = min_max(key(a0), key(a1));
    let (blo, bhi) = min_max(key(b0), key(b1));
    let lo = alo.max(blo);
    let hi = ahi.min(bhi);
    if lo > hi {
        return false;
    }
    if lo < hi {
        return true;
    }
    // A single common point of collinear segments is an endpoint of both.
    false
}

fn min_max(a: f64, b: f64) -> (f64, f64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Integer translations `k` for which the bounding boxes of `a` and `b + k`
/// may meet.
pub(crate) fn candidate_offsets(a: (Vec2, Vec2), b: (Vec2, Vec2)) -> impl Iterator<Item = IVec2> {
    let (ax0, ax1) = min_max(a.0.x, a.1.x);
    let (ay0, ay1) = min_max(a.0.y, a.1.y);
    let (bx0, bx1) = min_max(b.0.x, b.1.x);
    let (by0, by1) = min_max(b.0.y, b.1.y);
    let kx0 = (ax0 - bx1).floor() as i64 - 1;
    let kx1 = (ax1 - bx0).ceil() as i64 + 1;
    let ky0 = (ay0 - by1).floor() as i64 - 1;
    let ky1 = (ay1 - by0).ceil() as i64 + 1;
    (kx0..=kx1).flat_map(move |kx| (ky0..=ky1).map(move |ky| IVec2::new(kx, ky)))
}

/// True when some integer translate of `b` conflicts with `a` (see
/// [`segments_conflict`]). Identical segments conflict with themselves.
pub fn segments_intersect_torus(a: &LiftedSegment, b: &LiftedSegment) -> bool {
    let (a0, a1) = (a.start, a.end());
    candidate_offsets((a0, a1), (b.start, b.end())).any(|k| {
        let b0 = b.start.shifted(k);
        let b1 = b0 + b.disp;
        segments_conflict(a0, a1, b0, b1)
    })
}
