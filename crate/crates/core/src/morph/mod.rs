//! Piecewise-linear morphs between isotopic drawings.
//!
//! A [`Morph`] is a sequence of keyframes over a fixed graph and fixed dart
//! translations. Consecutive keyframes are joined by linear steps in which
//! every vertex moves parallel to a declared direction.

mod epsilon;
pub mod io;
pub(crate) mod pipeline;
mod plan;
mod verify;
mod zipper;

pub use epsilon::{compute_epsilon, LinkTrajectory};
pub use pipeline::{add_diagonals, morph_embeddings, morph_triangulations, one_sided_morph, MorphOptions};
pub use verify::{sample_validity, verify_morph, VerifyFailure, VerifyReport};
pub use zipper::zipper_morph;

use crate::geometry::{IVec2, Vec2};
use crate::graph::VertexId;
use crate::{Error, Result};

/// One linear motion between two vertex configurations.
#[derive(Clone, Debug, PartialEq)]
pub struct MorphStep {
    pub start: Vec<Vec2>,
    pub end: Vec<Vec2>,
}

impl MorphStep {
    pub fn new(start: Vec<Vec2>, end: Vec<Vec2>) -> Self {
        MorphStep { start, end }
    }

    pub fn motion(&self, v: VertexId) -> Vec2 {
        self.end[v.0] - self.start[v.0]
    }

    /// Unit direction of the longest motion, or `None` if nothing moves.
    pub fn direction(&self) -> Option<Vec2> {
        self.start
            .iter()
            .zip(&self.end)
            .map(|(&a, &b)| b - a)
            .max_by(|a, b| a.norm_sq().total_cmp(&b.norm_sq()))
            .and_then(Vec2::normalized)
    }

    pub fn at(&self, t: f64) -> Vec<Vec2> {
        self.start.iter().zip(&self.end).map(|(&a, &b)| a.lerp(b, t)).collect()
    }
}

/// An edge added to triangulate a face, as `tail -> head` with translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Diagonal {
    pub tail: VertexId,
    pub head: VertexId,
    pub tau: IVec2,
}

/// Diagonals that, added to the drawn graph, give a triangulation that stays
/// valid from step `first_step` until the next carrier takes over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carrier {
    pub first_step: usize,
    pub diagonals: Vec<Diagonal>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Morph {
    keyframes: Vec<Vec<Vec2>>,
    directions: Vec<Vec2>,
    carriers: Vec<Carrier>,
    translation: Vec2,
}

impl Morph {
    pub fn new(
        keyframes: Vec<Vec<Vec2>>,
        directions: Vec<Vec2>,
        carriers: Vec<Carrier>,
        translation: Vec2,
    ) -> Result<Self> {
        if keyframes.is_empty() {
            return Err(Error::Precondition("a morph needs at least one keyframe".into()));
        }
        if directions.len() + 1 != keyframes.len() {
            return Err(Error::Precondition(format!(
                "{} directions for {} keyframes",
                directions.len(),
                keyframes.len()
            )));
        }
        let n = keyframes[0].len();
        if keyframes.iter().any(|f| f.len() != n) {
            return Err(Error::Precondition("keyframes differ in size".into()));
        }
        if carriers.is_empty() || carriers[0].first_step != 0 {
            return Err(Error::Precondition("the first carrier must start at step 0".into()));
        }
        if carriers.windows(2).any(|w| w[0].first_step >= w[1].first_step)
            || carriers.last().unwrap().first_step > directions.len()
        {
            return Err(Error::Precondition("carrier steps must increase".into()));
        }
        Ok(Morph { keyframes, directions, carriers, translation })
    }

    /// A morph that does not move anything.
    pub fn stationary(positions: Vec<Vec2>) -> Self {
        Morph {
            keyframes: vec![positions],
            directions: Vec::new(),
            carriers: vec![Carrier { first_step: 0, diagonals: Vec::new() }],
            translation: Vec2::ZERO,
        }
    }

    pub fn keyframes(&self) -> &[Vec<Vec2>] {
        &self.keyframes
    }

    pub fn num_keyframes(&self) -> usize {
        self.keyframes.len()
    }

    pub fn num_steps(&self) -> usize {
        self.directions.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.keyframes[0].len()
    }

    pub fn directions(&self) -> &[Vec2] {
        &self.directions
    }

    pub fn carriers(&self) -> &[Carrier] {
        &self.carriers
    }

    /// Translation declared between the last keyframe and the target drawing.
    pub fn translation(&self) -> Vec2 {
        self.translation
    }

    pub fn step(&self, i: usize) -> MorphStep {
        MorphStep::new(self.keyframes[i].clone(), self.keyframes[i + 1].clone())
    }

    /// Index of the carrier in force during step `i`.
    pub fn carrier_of_step(&self, i: usize) -> usize {
        self.carriers.iter().rposition(|c| c.first_step <= i).unwrap_or(0)
    }

    /// Positions at global parameter `t ∈ [0, 1]`, with steps equally spaced.
    pub fn positions_at(&self, t: f64) -> Vec<Vec2> {
        let k = self.num_steps();
        if k == 0 {
            return self.keyframes[0].clone();
        }
        let s = (t.clamp(0.0, 1.0) * k as f64).min(k as f64);
        let i = (s.floor() as usize).min(k - 1);
        let local = s - i as f64;
        self.keyframes[i].iter().zip(&self.keyframes[i + 1]).map(|(&a, &b)| a.lerp(b, local)).collect()
    }

    /// The same motion played backwards.
    pub fn reversed(&self) -> Morph {
        let k = self.num_steps();
        let mut keyframes = self.keyframes.clone();
        keyframes.reverse();
        let directions = self.directions.iter().rev().map(|&d| -d).collect();
        let mut carriers = Vec::with_capacity(self.carriers.len());
        for (i, c) in self.carriers.iter().enumerate().rev() {
            let end = self.carriers.get(i + 1).map_or(k, |n| n.first_step);
            carriers.push(Carrier { first_step: k - end, diagonals: c.diagonals.clone() });
        }
        // Carriers covering no steps collapse onto their neighbour.
        carriers.dedup_by(|b, a| a.first_step == b.first_step);
        carriers[0].first_step = 0;
        Morph { keyframes, directions, carriers, translation: -self.translation }
    }

    /// Plays `other` after `self`; the last keyframe of `self` must equal the
    /// first of `other`.
    pub fn concat(&self, other: &Morph) -> Result<Morph> {
        if self.keyframes.last() != other.keyframes.first() {
            return Err(Error::Internal("concatenated morphs do not meet".into()));
        }
        let k = self.num_steps();
        let mut keyframes = self.keyframes.clone();
        keyframes.extend(other.keyframes.iter().skip(1).cloned());
        let mut directions = self.directions.clone();
        directions.extend_from_slice(&other.directions);
        let mut carriers = self.carriers.clone();
        for c in &other.carriers {
            if c.diagonals == carriers.last().unwrap().diagonals {
                continue;
            }
            let first = if c.first_step == 0 { k } else { c.first_step + k };
            if first == carriers.last().unwrap().first_step {
                carriers.pop();
            }
            carriers.push(Carrier { first_step: first, diagonals: c.diagonals.clone() });
        }
        Ok(Morph { keyframes, directions, carriers, translation: self.translation + other.translation })
    }

    /// Replaces every carrier with one set of diagonals.
    pub fn with_carrier(mut self, diagonals: Vec<Diagonal>) -> Morph {
        self.carriers = vec![Carrier { first_step: 0, diagonals }];
        self
    }

    /// Drops steps in which no vertex moves.
    pub fn without_empty_steps(&self) -> Morph {
        let mut keyframes = vec![self.keyframes[0].clone()];
        let mut directions = Vec::new();
        let mut map = Vec::with_capacity(self.num_steps() + 1);
        for i in 0..self.num_steps() {
            map.push(directions.len());
            if self.keyframes[i + 1] != *keyframes.last().unwrap() {
                keyframes.push(self.keyframes[i + 1].clone());
                directions.push(self.directions[i]);
            }
        }
        map.push(directions.len());
        let mut carriers: Vec<Carrier> = Vec::new();
        for c in &self.carriers {
            let first = map[c.first_step];
            if let Some(last) = carriers.last_mut() {
                if last.first_step == first {
                    last.diagonals = c.diagonals.clone();
                    continue;
                }
            }
            carriers.push(Carrier { first_step: first, diagonals: c.diagonals.clone() });
        }
        if carriers.len() > 1 && carriers.last().unwrap().first_step == directions.len() {
            // A carrier with no steps left cannot be checked; keep the earlier one.
            carriers.pop();
        }
        Morph { keyframes, directions, carriers, translation: self.translation }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Vec2> {
        v.iter().map(|&(x, y)| Vec2::new(x, y)).collect()
    }

    fn sample() -> Morph {
        let frames = vec![pts(&[(0.1, 0.1), (0.5, 0.5)]), pts(&[(0.3, 0.1), (0.7, 0.5)]), pts(&[(0.3, 0.4), (0.7, 0.5)])];
        let d = |t, h| Diagonal { tail: VertexId(t), head: VertexId(h), tau: IVec2::ZERO };
        let carriers = vec![
            Carrier { first_step: 0, diagonals: vec![d(0, 1)] },
            Carrier { first_step: 1, diagonals: vec![d(1, 0)] },
        ];
        Morph::new(frames, vec![Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)], carriers, Vec2::new(0.5, 0.0)).unwrap()
    }

    #[test]
    fn reversing_twice_is_identity() {
        let m = sample();
        let r = m.reversed();
        assert_eq!(r.keyframes()[0], m.keyframes()[2]);
        assert_eq!(r.directions()[0], Vec2::new(0.0, -1.0));
        assert_eq!(r.carriers()[1].first_step, 1);
        assert_eq!(r.carriers()[0].diagonals, m.carriers()[1].diagonals);
        assert_eq!(r.reversed(), m);
    }

    #[test]
    fn positions_at_interpolates_steps() {
        let m = sample();
        assert_eq!(m.positions_at(0.0), m.keyframes()[0]);
        assert_eq!(m.positions_at(1.0), m.keyframes()[2]);
        assert_eq!(m.positions_at(0.5), m.keyframes()[1]);
        let q = m.positions_at(0.25);
        assert!((q[0].x - 0.2).abs() < 1e-15 && q[0].y == 0.1);
        assert_eq!(m.carrier_of_step(0), 0);
        assert_eq!(m.carrier_of_step(1), 1);
    }

    #[test]
    fn empty_steps_are_dropped() {
        let f = pts(&[(0.1, 0.1)]);
        let g = pts(&[(0.2, 0.1)]);
        let m = Morph::new(vec![f.clone(), f.clone(), g.clone(), g], vec![Vec2::new(1.0, 0.0); 3], vec![Carrier { first_step: 0, diagonals: vec![] }], Vec2::ZERO)
            .unwrap()
            .without_empty_steps();
        assert_eq!(m.num_steps(), 1);
        assert_eq!(m.keyframes()[0], f);
    }

    #[test]
    fn concat_requires_meeting_ends() {
        let m = sample();
        let joined = m.concat(&m.reversed()).unwrap();
        assert_eq!(joined.num_steps(), 4);
        assert_eq!(joined.translation(), Vec2::ZERO);
        assert!(m.concat(&m).is_err());
    }

    #[test]
    fn malformed_morphs_are_rejected() {
        let f = pts(&[(0.1, 0.1)]);
        let c = vec![Carrier { first_step: 0, diagonals: vec![] }];
        assert!(Morph::new(vec![], vec![], c.clone(), Vec2::ZERO).is_err());
        assert!(Morph::new(vec![f.clone(), f.clone()], vec![], c.clone(), Vec2::ZERO).is_err());
        assert!(Morph::new(vec![f.clone(), pts(&[])], vec![Vec2::new(1.0, 0.0)], c, Vec2::ZERO).is_err());
        assert!(Morph::new(vec![f], vec![], vec![Carrier { first_step: 1, diagonals: vec![] }], Vec2::ZERO).is_err());
    }
}
