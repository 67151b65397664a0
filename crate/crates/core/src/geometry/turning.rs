//! Total turning angle of closed polylines.

use super::Vec2;
use crate::{Error, Result};

/// Sum of signed exterior angles of a closed polyline, in radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TurningAngle(pub f64);

impl TurningAngle {
    pub fn radians(self) -> f64 {
        self.0
    }
}

/// Total turning angle of the closed polyline through the lifted points
/// `points[0], …, points[m-1]` whose last edge has displacement `closing`.
///
/// The edges are `points[i+1] - points[i]` followed by `closing`. Every
/// exterior angle must lie strictly between `-π` and `π`.
pub fn total_turning_angle(points: &[Vec2], closing: Vec2) -> Result<TurningAngle> {
    if points.is_empty() {
        return Err(Error::Degenerate("empty polyline".into()));
    }
    let m = points.len();
    let edges: Vec<Vec2> = (0..m)
        .map(|i| if i + 1 < m { points[i + 1] - points[i] } else { closing })
        .collect();
    if let Some(i) = edges.iter().position(|e| e.x == 0.0 && e.y == 0.0) {
        return Err(Error::Degenerate(format!("edge {i} has zero length")));
    }
    let mut total = 0.0;
    for i in 0..m {
        let a = edges[(i + m - 1) % m];
        let b = edges[i];
        let cross = a.cross(b);
        let dot = a.dot(b);
        if cross == 0.0 && dot < 0.0 {
            return Err(Error::Degenerate(format!("reversal at vertex {i}")));
        }
        total += cross.atan2(dot);
    }
    Ok(TurningAngle(total))
}
