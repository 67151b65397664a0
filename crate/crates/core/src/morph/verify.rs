//! Independent checks of a morph against its end drawings.

use super::pipeline::add_diagonals;
use super::Morph;
use crate::geometry::{orient_sign, Vec2};
use crate::graph::{check_embedding, check_triangulation, DartId, Drawing, Faces, VertexId};
use crate::isotopy::{isotopy_verdict, normalize_representation, IsotopyVerdict};
use std::fmt;

/// Largest allowed deviation of a motion vector from the declared direction.
pub const PARALLEL_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum VerifyFailure {
    GraphMismatch(String),
    NotIsotopic { witness: DartId },
    WrongVertexCount { expected: usize, found: usize },
    StartMismatch { vertex: VertexId },
    EndMismatch { vertex: VertexId },
    BadDirection { step: usize },
    NotParallel { step: usize, vertex: VertexId, deviation: f64 },
    CarrierInvalid { carrier: usize, reason: String },
    Inverted { keyframe: usize, face: usize },
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyFailure::GraphMismatch(s) => write!(f, "graph mismatch: {s}"),
            VerifyFailure::NotIsotopic { witness } => write!(f, "end drawings are not isotopic (dart {witness})"),
            VerifyFailure::WrongVertexCount { expected, found } => {
                write!(f, "keyframes have {found} vertices, expected {expected}")
            }
            VerifyFailure::StartMismatch { vertex } => write!(f, "first keyframe differs at {vertex}"),
            VerifyFailure::EndMismatch { vertex } => write!(f, "last keyframe differs at {vertex}"),
            VerifyFailure::BadDirection { step } => write!(f, "step {step} has no unit direction"),
            VerifyFailure::NotParallel { step, vertex, deviation } => {
                write!(f, "step {step}: {vertex} deviates from the direction by {deviation:e}")
            }
            VerifyFailure::CarrierInvalid { carrier, reason } => write!(f, "carrier {carrier}: {reason}"),
            VerifyFailure::Inverted { keyframe, face } => {
                write!(f, "keyframe {keyframe}: carried face {face} is not counterclockwise")
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub steps: usize,
    pub failures: Vec<VerifyFailure>,
}

impl VerifyReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

const MAX_FAILURES: usize = 64;

/// Carried triangulation of every carrier: the first is anchored at the
/// start drawing, later ones at the (normalized) end drawing.
fn carrier_triangulations(g0: &Drawing, g1n: &Drawing, m: &Morph) -> Result<Vec<Drawing>, VerifyFailure> {
    let count = m.carriers().len();
    m.carriers()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let anchor = match i {
                0 => g0,
                i if i + 1 == count => g1n,
                _ => {
                    return Err(VerifyFailure::CarrierInvalid {
                        carrier: i,
                        reason: "only the first and last carriers can be anchored".into(),
                    })
                }
            };
            let t = add_diagonals(anchor, &c.diagonals)
                .map_err(|e| VerifyFailure::CarrierInvalid { carrier: i, reason: e.to_string() })?;
            check_triangulation(&t).map_err(|e| VerifyFailure::CarrierInvalid { carrier: i, reason: e.to_string() })?;
            Ok(t)
        })
        .collect()
}

fn faces_positive(t: &Drawing, faces: &Faces, positions: &[Vec2]) -> Option<usize> {
    let g = t.graph();
    faces.walks().iter().position(|w| {
        let a = positions[g.tail(w[0]).0];
        let b = positions[g.tail(w[1]).0].shifted(t.tau(w[0]));
        let c = positions[g.tail(w[2]).0].shifted(t.tau(w[0]) + t.tau(w[1]));
        orient_sign(a, b, c) <= 0
    })
}

/// Checks endpoints, exact parallelism of every step, and validity of the
/// carried triangulation at every keyframe. Since every step is parallel,
/// these imply that every intermediate drawing is an embedding.
pub fn verify_morph(g0: &Drawing, g1: &Drawing, m: &Morph) -> VerifyReport {
    let mut report = VerifyReport { steps: m.num_steps(), failures: Vec::new() };
    let fail = |r: &mut VerifyReport, f: VerifyFailure| {
        if r.failures.len() < MAX_FAILURES {
            r.failures.push(f);
        }
    };
    if !g0.graph().same_darts(g1.graph()) {
        fail(&mut report, VerifyFailure::GraphMismatch("end drawings have different darts".into()));
        return report;
    }
    let n = g0.num_vertices();
    if m.num_vertices() != n {
        fail(&mut report, VerifyFailure::WrongVertexCount { expected: n, found: m.num_vertices() });
        return report;
    }
    let g1n = match isotopy_verdict(g0, g1) {
        Ok(IsotopyVerdict::Isotopic) => {
            let (rep, _) = normalize_representation(g0.rep(), g1.rep(), g0.graph()).expect("normalized once");
            g0.with_rep(rep).expect("same graph")
        }
        Ok(IsotopyVerdict::NotIsotopic { witness }) => {
            fail(&mut report, VerifyFailure::NotIsotopic { witness });
            return report;
        }
        Err(e) => {
            fail(&mut report, VerifyFailure::GraphMismatch(e.to_string()));
            return report;
        }
    };

    let frames = m.keyframes();
    for v in 0..n {
        if frames[0][v] != g0.positions()[v] {
            fail(&mut report, VerifyFailure::StartMismatch { vertex: VertexId(v) });
        }
        let last = frames[frames.len() - 1][v] + m.translation();
        if last != g1n.positions()[v] {
            fail(&mut report, VerifyFailure::EndMismatch { vertex: VertexId(v) });
        }
    }

    for (s, &dir) in m.directions().iter().enumerate() {
        if !((dir.norm() - 1.0).abs() <= 1e-12) {
            fail(&mut report, VerifyFailure::BadDirection { step: s });
            continue;
        }
        for v in 0..n {
            let motion = frames[s + 1][v] - frames[s][v];
            let deviation = motion.cross(dir).abs();
            if deviation > PARALLEL_TOLERANCE * motion.norm().max(1.0) {
                fail(&mut report, VerifyFailure::NotParallel { step: s, vertex: VertexId(v), deviation });
            }
        }
    }

    let tris = match carrier_triangulations(g0, &g1n, m) {
        Ok(t) => t,
        Err(f) => {
            fail(&mut report, f);
            return report;
        }
    };
    for (i, t) in tris.iter().enumerate() {
        let faces = Faces::new(t.graph());
        let first = m.carriers()[i].first_step;
        let end = m.carriers().get(i + 1).map_or(m.num_steps(), |c| c.first_step);
        for (k, frame) in frames.iter().enumerate().take(end + 1).skip(first) {
            if let Some(face) = faces_positive(t, &faces, frame) {
                fail(&mut report, VerifyFailure::Inverted { keyframe: k, face });
            }
        }
    }
    report
}

/// Samples `samples` interior parameters in every step and checks the
/// carried triangulation there; every `full_every`-th sample also runs the
/// full embedding check on the drawn graph. Returns the first failing
/// `(step, t)`.
pub fn sample_validity(
    g0: &Drawing,
    g1: &Drawing,
    m: &Morph,
    samples: usize,
    full_every: usize,
) -> Result<(), (usize, f64)> {
    let (rep, _) = normalize_representation(g0.rep(), g1.rep(), g0.graph()).map_err(|_| (0, 0.0))?;
    let g1n = g0.with_rep(rep).map_err(|_| (0, 0.0))?;
    let tris = carrier_triangulations(g0, &g1n, m).map_err(|_| (0, 0.0))?;
    let faces: Vec<Faces> = tris.iter().map(|t| Faces::new(t.graph())).collect();
    let frames = m.keyframes();
    let mut counter = 0usize;
    for s in 0..m.num_steps() {
        let c = m.carrier_of_step(s);
        for i in 1..=samples {
            let t = i as f64 / (samples + 1) as f64;
            let pos: Vec<Vec2> = frames[s].iter().zip(&frames[s + 1]).map(|(&a, &b)| a.lerp(b, t)).collect();
            if faces_positive(&tris[c], &faces[c], &pos).is_some() {
                return Err((s, t));
            }
            counter += 1;
            if full_every > 0 && counter.is_multiple_of(full_every) {
                let d = g0.with_positions(pos).map_err(|_| (s, t))?;
                if !check_embedding(&d).is_valid() {
                    return Err((s, t));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::lattice;
    use crate::morph::Carrier;

    fn bump(frame: &[Vec2], v: usize, by: Vec2) -> Vec<Vec2> {
        let mut f = frame.to_vec();
        f[v] += by;
        f
    }

    fn out_and_back(d: &Drawing, mid: Vec<Vec2>) -> Morph {
        let p = d.positions().to_vec();
        let dirs = vec![Vec2::new(1.0, 0.0), Vec2::new(-1.0, 0.0)];
        Morph::new(vec![p.clone(), mid, p], dirs, vec![Carrier { first_step: 0, diagonals: vec![] }], Vec2::ZERO).unwrap()
    }

    #[test]
    fn stationary_morph_passes() {
        let d = lattice(3, 3, 0).unwrap();
        let r = verify_morph(&d, &d, &Morph::stationary(d.positions().to_vec()));
        assert!(r.is_valid());
        assert_eq!(r.steps, 0);
    }

    #[test]
    fn orthogonal_motion_is_not_parallel() {
        let d = lattice(3, 3, 0).unwrap();
        let mid = bump(&bump(d.positions(), 0, Vec2::new(0.01, 0.0)), 1, Vec2::new(0.0, 0.01));
        let r = verify_morph(&d, &d, &out_and_back(&d, mid));
        assert!(r.failures.iter().any(|f| matches!(f, VerifyFailure::NotParallel { step: 0, vertex: VertexId(1), .. })));
    }

    #[test]
    fn pushing_a_vertex_past_its_link_inverts_a_face() {
        let d = lattice(3, 3, 0).unwrap();
        let mid = bump(d.positions(), 4, Vec2::new(0.4, 0.0));
        let r = verify_morph(&d, &d, &out_and_back(&d, mid));
        assert!(r.failures.iter().all(|f| matches!(f, VerifyFailure::Inverted { keyframe: 1, .. })));
        assert!(!r.is_valid());
    }

    #[test]
    fn wrong_endpoint_is_reported() {
        let d = lattice(3, 3, 0).unwrap();
        let m = Morph::stationary(bump(d.positions(), 2, Vec2::new(0.01, 0.0)));
        let r = verify_morph(&d, &d, &m);
        assert!(r.failures.contains(&VerifyFailure::StartMismatch { vertex: VertexId(2) }));
        assert!(r.failures.contains(&VerifyFailure::EndMismatch { vertex: VertexId(2) }));
    }
}
