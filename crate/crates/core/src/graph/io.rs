//! Plain-text drawing files.
//!
//! ```text
//! torus-drawing 1
//! vertices 2
//! v 0 0.25 0.5
//! v 1 0.75 0.5
//! edges 1
//! e 0 0 1 0 0 2.5
//! rotation
//! r 0 0
//! r 1 1
//! ```
//!
//! Edge lines are `e id tail head tx ty [weight]`. Dart `2e` runs from tail
//! to head. The optional rotation section lists, for each vertex, its darts
//! in counterclockwise order; without it the rotation is derived from the
//! geometry. `#` starts a comment.

use super::{CoordRep, DartGraph, DartId, Drawing};
use crate::geometry::{IVec2, Vec2};
use crate::{Error, Result};
use std::fmt::Write as _;
use std::path::Path;

pub const DRAWING_HEADER: &str = "torus-drawing 1";

/// A parsed drawing file.
#[derive(Clone, Debug)]
pub struct DrawingFile {
    pub drawing: Drawing,
    /// Per-edge spring weights, when the file supplies them.
    pub weights: Option<Vec<f64>>,
}

pub(crate) struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, Vec<&'a str>)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, Vec<&'a str>)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
                .filter(|(_, t)| !t.is_empty()),
        );
        Lines { inner: it.peekable(), last: 0 }
    }

    pub(crate) fn next(&mut self) -> Result<(usize, Vec<&'a str>)> {
        match self.inner.next() {
            Some((n, t)) => {
                self.last = n;
                Ok((n, t))
            }
            None => Err(Error::Parse { line: self.last + 1, msg: "unexpected end of file".into() }),
        }
    }

    pub(crate) fn peek_keyword(&mut self) -> Option<&'a str> {
        self.inner.peek().map(|(_, t)| t[0])
    }

    pub(crate) fn expect(&mut self, keyword: &str, arity: usize) -> Result<(usize, Vec<&'a str>)> {
        let (n, t) = self.next()?;
        if t[0] != keyword {
            return Err(perr(n, format!("expected `{keyword}`, found `{}`", t[0])));
        }
        if t.len() != arity + 1 {
            return Err(perr(n, format!("`{keyword}` takes {arity} fields")));
        }
        Ok((n, t))
    }

    pub(crate) fn finish(&mut self) -> Result<()> {
        match self.inner.next() {
            Some((n, t)) => Err(perr(n, format!("unexpected `{}`", t[0]))),
            None => Ok(()),
        }
    }
}

pub(crate) fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub(crate) fn parse_num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse().map_err(|_| perr(line, format!("bad number `{s}`")))
}

pub(crate) fn parse_float(line: usize, s: &str) -> Result<f64> {
    let x: f64 = parse_num(line, s)?;
    if !x.is_finite() {
        return Err(perr(line, format!("non-finite number `{s}`")));
    }
    Ok(x)
}

pub(crate) fn expect_header(lines: &mut Lines<'_>, header: &str) -> Result<()> {
    let (n, t) = lines.next()?;
    if t.join(" ") != header {
        return Err(perr(n, format!("expected header `{header}`")));
    }
    Ok(())
}

pub fn parse_drawing(text: &str) -> Result<DrawingFile> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, DRAWING_HEADER)?;
    let (n0, t) = lines.expect("vertices", 1)?;
    let n: usize = parse_num(n0, t[1])?;
    let mut positions = vec![None; n];
    for _ in 0..n {
        let (ln, t) = lines.expect("v", 3)?;
        let id: usize = parse_num(ln, t[1])?;
        if id >= n || positions[id].is_some() {
            return Err(perr(ln, format!("bad or repeated vertex id {id}")));
        }
        positions[id] = Some(Vec2::new(parse_float(ln, t[2])?, parse_float(ln, t[3])?));
    }
    let positions: Vec<Vec2> = positions.into_iter().map(|p| p.unwrap()).collect();

    let (m0, t) = lines.expect("edges", 1)?;
    let m: usize = parse_num(m0, t[1])?;
    let mut edges = vec![None; m];
    let mut weights: Vec<Option<f64>> = vec![None; m];
    for _ in 0..m {
        let (ln, t) = lines.next()?;
        if t[0] != "e" || !(t.len() == 6 || t.len() == 7) {
            return Err(perr(ln, "expected `e id tail head tx ty [weight]`"));
        }
        let id: usize = parse_num(ln, t[1])?;
        if id >= m || edges[id].is_some() {
            return Err(perr(ln, format!("bad or repeated edge id {id}")));
        }
        let tail: usize = parse_num(ln, t[2])?;
        let head: usize = parse_num(ln, t[3])?;
        if tail >= n || head >= n {
            return Err(perr(ln, "edge endpoint out of range"));
        }
        let tau = IVec2::new(parse_num(ln, t[4])?, parse_num(ln, t[5])?);
        edges[id] = Some((tail, head, tau));
        if t.len() == 7 {
            weights[id] = Some(parse_float(ln, t[6])?);
        }
    }
    let edges: Vec<(usize, usize, IVec2)> = edges.into_iter().map(|e| e.unwrap()).collect();
    let weights = match weights.iter().filter(|w| w.is_some()).count() {
        0 => None,
        k if k == m => Some(weights.into_iter().map(|w| w.unwrap()).collect()),
        _ => return Err(perr(m0, "weights must be given for all edges or none")),
    };

    let drawing = if lines.peek_keyword() == Some("rotation") {
        lines.next()?;
        let mut rotation = vec![None; n];
        for _ in 0..n {
            let (ln, t) = lines.next()?;
            if t[0] != "r" || t.len() < 2 {
                return Err(perr(ln, "expected `r vertex darts...`"));
            }
            let v: usize = parse_num(ln, t[1])?;
            if v >= n || rotation[v].is_some() {
                return Err(perr(ln, format!("bad or repeated rotation vertex {v}")));
            }
            let darts = t[2..].iter().map(|s| parse_num(ln, s).map(DartId)).collect::<Result<Vec<_>>>()?;
            rotation[v] = Some(darts);
        }
        let rotation = rotation.into_iter().map(|r| r.unwrap()).collect();
        let ends: Vec<(usize, usize)> = edges.iter().map(|&(t, h, _)| (t, h)).collect();
        let tau: Vec<IVec2> = edges.iter().map(|e| e.2).collect();
        let graph = DartGraph::new(n, &ends, rotation)?;
        Drawing::new(graph, CoordRep::from_edge_tau(positions, &tau))?
    } else {
        Drawing::from_edges(positions, &edges)?
    };
    lines.finish()?;
    Ok(DrawingFile { drawing, weights })
}

/// Serializes a drawing in the canonical gauge. Floats use the shortest
/// representation that round-trips exactly.
pub fn format_drawing(drawing: &Drawing, weights: Option<&[f64]>) -> String {
    let d = drawing.canonicalize();
    let g = d.graph();
    let mut s = String::new();
    writeln!(s, "{DRAWING_HEADER}").unwrap();
    writeln!(s, "vertices {}", g.num_vertices()).unwrap();
    for v in g.vertices() {
        let p = d.position(v);
        writeln!(s, "v {} {:?} {:?}", v.0, p.x, p.y).unwrap();
    }
    writeln!(s, "edges {}", g.num_edges()).unwrap();
    for e in g.edges() {
        let dart = e.dart();
        let t = d.tau(dart);
        write!(s, "e {} {} {} {} {}", e.0, g.tail(dart).0, g.head(dart).0, t.x, t.y).unwrap();
        if let Some(w) = weights {
            write!(s, " {:?}", w[e.0]).unwrap();
        }
        s.push('\n');
    }
    s.push_str("rotation\n");
    for v in g.vertices() {
        write!(s, "r {}", v.0).unwrap();
        for dart in g.rotation(v) {
            write!(s, " {}", dart.0).unwrap();
        }
        s.push('\n');
    }
    s
}

pub fn read_drawing(path: impl AsRef<Path>) -> Result<DrawingFile> {
    parse_drawing(&std::fs::read_to_string(path)?)
}

pub fn write_drawing(path: impl AsRef<Path>, drawing: &Drawing, weights: Option<&[f64]>) -> Result<()> {
    std::fs::write(path, format_drawing(drawing, weights))?;
    Ok(())
}

pub const WEIGHTS_HEADER: &str = "torus-weights 1";

/// Parses a weight file: a header, `edges m`, then `w id value` lines.
pub fn parse_weights(text: &str) -> Result<Vec<f64>> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, WEIGHTS_HEADER)?;
    let (m0, t) = lines.expect("edges", 1)?;
    let m: usize = parse_num(m0, t[1])?;
    let mut w = vec![None; m];
    for _ in 0..m {
        let (ln, t) = lines.expect("w", 2)?;
        let id: usize = parse_num(ln, t[1])?;
        if id >= m || w[id].is_some() {
            return Err(perr(ln, format!("bad or repeated edge id {id}")));
        }
        w[id] = Some(parse_float(ln, t[2])?);
    }
    lines.finish()?;
    Ok(w.into_iter().map(|x| x.unwrap()).collect())
}

pub fn format_weights(weights: &[f64]) -> String {
    let mut s = format!("{WEIGHTS_HEADER}\nedges {}\n", weights.len());
    for (i, w) in weights.iter().enumerate() {
        writeln!(s, "w {i} {w:?}").unwrap();
    }
    s
}

pub fn read_weights(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    parse_weights(&std::fs::read_to_string(path)?)
}

pub fn write_weights(path: impl AsRef<Path>, weights: &[f64]) -> Result<()> {
    std::fs::write(path, format_weights(weights))?;
    Ok(())
}
