//! Plain-text morph files.
//!
//! ```text
//! torus-morph 1
//! graph 9f1c0a33d2e4b571
//! vertices 2
//! keyframes 2
//! translation 0.0 0.0
//! carriers 1
//! carrier 0 0
//! frame 0
//! 0.25 0.5
//! 0.75 0.5
//! step 1.0 0.0
//! frame 1
//! 0.5 0.5
//! 0.75 0.5
//! ```
//!
//! `graph` is a fingerprint of the combinatorial map. Each carrier line is
//! followed by its diagonals as `d tail head tx ty`. Each `step` line gives
//! the unit direction of the step leading to the next frame.

use super::{Carrier, Diagonal, Morph};
use crate::geometry::{IVec2, Vec2};
use crate::graph::io::{expect_header, parse_float, parse_num, perr, Lines};
use crate::graph::{DartGraph, VertexId};
use crate::Result;
use std::fmt::Write as _;
use std::path::Path;

pub const MORPH_HEADER: &str = "torus-morph 1";

/// FNV-1a hash of the vertex count, dart tails and rotation system.
pub fn graph_fingerprint(graph: &DartGraph) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    eat(graph.num_vertices() as u64);
    for d in graph.darts() {
        eat(graph.tail(d).0 as u64);
    }
    for v in graph.vertices() {
        eat(u64::MAX);
        for d in graph.rotation(v) {
            eat(d.0 as u64);
        }
    }
    h
}

#[derive(Clone, Debug)]
pub struct MorphFile {
    pub fingerprint: u64,
    pub morph: Morph,
}

pub fn format_morph(graph: &DartGraph, morph: &Morph) -> String {
    let mut s = String::new();
    writeln!(s, "{MORPH_HEADER}").unwrap();
    writeln!(s, "graph {:016x}", graph_fingerprint(graph)).unwrap();
    writeln!(s, "vertices {}", morph.num_vertices()).unwrap();
    writeln!(s, "keyframes {}", morph.num_keyframes()).unwrap();
    let t = morph.translation();
    writeln!(s, "translation {:?} {:?}", t.x, t.y).unwrap();
    writeln!(s, "carriers {}", morph.carriers().len()).unwrap();
    for c in morph.carriers() {
        writeln!(s, "carrier {} {}", c.first_step, c.diagonals.len()).unwrap();
        for d in &c.diagonals {
            writeln!(s, "d {} {} {} {}", d.tail.0, d.head.0, d.tau.x, d.tau.y).unwrap();
        }
    }
    for (i, frame) in morph.keyframes().iter().enumerate() {
        if i > 0 {
            let d = morph.directions()[i - 1];
            writeln!(s, "step {:?} {:?}", d.x, d.y).unwrap();
        }
        writeln!(s, "frame {i}").unwrap();
        for p in frame {
            writeln!(s, "{:?} {:?}", p.x, p.y).unwrap();
        }
    }
    s
}

pub fn parse_morph(text: &str) -> Result<MorphFile> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, MORPH_HEADER)?;
    let (ln, t) = lines.expect("graph", 1)?;
    let fingerprint = u64::from_str_radix(t[1], 16).map_err(|_| perr(ln, "bad fingerprint"))?;
    let (ln, t) = lines.expect("vertices", 1)?;
    let n: usize = parse_num(ln, t[1])?;
    let (ln, t) = lines.expect("keyframes", 1)?;
    let k: usize = parse_num(ln, t[1])?;
    if k == 0 {
        return Err(perr(ln, "a morph needs at least one keyframe"));
    }
    let (ln, t) = lines.expect("translation", 2)?;
    let translation = Vec2::new(parse_float(ln, t[1])?, parse_float(ln, t[2])?);
    let (ln, t) = lines.expect("carriers", 1)?;
    let c: usize = parse_num(ln, t[1])?;
    let mut carriers = Vec::with_capacity(c);
    for _ in 0..c {
        let (ln, t) = lines.expect("carrier", 2)?;
        let first_step: usize = parse_num(ln, t[1])?;
        let count: usize = parse_num(ln, t[2])?;
        let mut diagonals = Vec::with_capacity(count);
        for _ in 0..count {
            let (ln, t) = lines.expect("d", 4)?;
            let tail: usize = parse_num(ln, t[1])?;
            let head: usize = parse_num(ln, t[2])?;
            if tail >= n || head >= n {
                return Err(perr(ln, "diagonal endpoint out of range"));
            }
            diagonals.push(Diagonal {
                tail: VertexId(tail),
                head: VertexId(head),
                tau: IVec2::new(parse_num(ln, t[3])?, parse_num(ln, t[4])?),
            });
        }
        carriers.push(Carrier { first_step, diagonals });
    }
    let mut keyframes = Vec::with_capacity(k);
    let mut directions = Vec::with_capacity(k - 1);
    for i in 0..k {
        if i > 0 {
            let (ln, t) = lines.expect("step", 2)?;
            directions.push(Vec2::new(parse_float(ln, t[1])?, parse_float(ln, t[2])?));
        }
        let (ln, t) = lines.expect("frame", 1)?;
        if parse_num::<usize>(ln, t[1])? != i {
            return Err(perr(ln, format!("expected frame {i}")));
        }
        let mut frame = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, t) = lines.next()?;
            if t.len() != 2 {
                return Err(perr(ln, "expected `x y`"));
            }
            frame.push(Vec2::new(parse_float(ln, t[0])?, parse_float(ln, t[1])?));
        }
        keyframes.push(frame);
    }
    lines.finish()?;
    let morph = Morph::new(keyframes, directions, carriers, translation)?;
    Ok(MorphFile { fingerprint, morph })
}

pub fn read_morph(path: impl AsRef<Path>) -> Result<MorphFile> {
    parse_morph(&std::fs::read_to_string(path)?)
}

pub fn write_morph(path: impl AsRef<Path>, graph: &DartGraph, morph: &Morph) -> Result<()> {
    std::fs::write(path, format_morph(graph, morph))?;
    Ok(())
}
