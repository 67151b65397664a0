//! SVG pictures of drawings and morph frames.
//!
//! The fundamental square is drawn together with a window of neighbouring
//! copies; every lift of every edge that meets the window is drawn and
//! clipped to it. Loops are dashed.

use crate::geometry::{IVec2, Vec2};
use crate::graph::Drawing;
use crate::morph::Morph;
use crate::{Error, Result};
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq)]
pub struct RenderSpec {
    /// Copies of the unit square per side; the fundamental square sits in
    /// the middle.
    pub replication: usize,
    /// Width and height of the image in pixels.
    pub size: f64,
    pub stroke_width: f64,
    pub vertex_radius: f64,
    /// Frames per morph step, counting both endpoints.
    pub samples_per_step: usize,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { replication: 3, size: 600.0, stroke_width: 1.5, vertex_radius: 4.0, samples_per_step: 5 }
    }
}

impl RenderSpec {
    fn validate(&self) -> Result<()> {
        if self.replication == 0 || self.samples_per_step < 2 || !(self.size > 0.0) {
            return Err(Error::Precondition(
                "render needs replication >= 1, at least 2 samples per step and a positive size".into(),
            ));
        }
        Ok(())
    }

    /// The window `[lo, hi]^2` in torus coordinates.
    fn window(&self) -> (f64, f64) {
        let h = (self.replication as f64 - 1.0) / 2.0;
        (-h, 1.0 + h)
    }
}

/// Stable color of vertex `i`.
fn vertex_color(i: usize) -> String {
    let hue = (i as f64 * 137.507_764_050_037_85) % 360.0;
    format!("hsl({hue:.1},70%,45%)")
}

fn lift_range(lo_pt: f64, hi_pt: f64, win: (f64, f64)) -> std::ops::RangeInclusive<i64> {
    ((win.0 - hi_pt).ceil() as i64)..=((win.1 - lo_pt).floor() as i64)
}

/// Lifts of a point in the half-open window, so each dot appears once per
/// cell.
fn point_range(p: f64, win: (f64, f64)) -> std::ops::Range<i64> {
    ((win.0 - p).ceil() as i64)..((win.1 - p).ceil() as i64)
}

fn svg(drawing: &Drawing, positions: &[Vec2], spec: &RenderSpec) -> String {
    let (lo, hi) = spec.window();
    let scale = spec.size / (hi - lo);
    let map = |p: Vec2| ((p.x - lo) * scale, spec.size - (p.y - lo) * scale);
    let g = drawing.graph();
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        spec.size
    )
    .unwrap();
    writeln!(s, r#"<defs><clipPath id="win"><rect x="0" y="0" width="{0}" height="{0}"/></clipPath></defs>"#, spec.size)
        .unwrap();
    writeln!(s, r#"<rect x="0" y="0" width="{0}" height="{0}" fill="white"/>"#, spec.size).unwrap();
    let (x0, y0) = map(Vec2::new(0.0, 1.0));
    writeln!(
        s,
        r##"<rect x="{x0:.3}" y="{y0:.3}" width="{scale:.3}" height="{scale:.3}" fill="#f4f4f4" stroke="#888" stroke-width="1"/>"##
    )
    .unwrap();
    writeln!(s, r#"<g clip-path="url(#win)" stroke-linecap="round">"#).unwrap();
    for e in g.edges() {
        let d = e.dart();
        let a = positions[g.tail(d).0];
        let b = positions[g.head(d).0].shifted(drawing.tau(d));
        let style = if g.is_loop(d) {
            format!(r##"stroke="#c0392b" stroke-width="{:.2}" stroke-dasharray="6 3""##, spec.stroke_width * 1.4)
        } else {
            format!(r##"stroke="#333" stroke-width="{:.2}""##, spec.stroke_width)
        };
        for kx in lift_range(a.x.min(b.x), a.x.max(b.x), (lo, hi)) {
            for ky in lift_range(a.y.min(b.y), a.y.max(b.y), (lo, hi)) {
                let k = IVec2::new(kx, ky);
                let (p, q) = (map(a.shifted(k)), map(b.shifted(k)));
                writeln!(s, r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" {style}/>"#, p.0, p.1, q.0, q.1).unwrap();
            }
        }
    }
    for (i, &p) in positions.iter().enumerate() {
        for kx in point_range(p.x, (lo, hi)) {
            for ky in point_range(p.y, (lo, hi)) {
                let c = map(p.shifted(IVec2::new(kx, ky)));
                writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="{:.2}" fill="{}"/>"#, c.0, c.1, spec.vertex_radius, vertex_color(i))
                    .unwrap();
            }
        }
    }
    s.push_str("</g>\n</svg>\n");
    s
}

pub fn render_drawing(drawing: &Drawing, spec: &RenderSpec) -> Result<String> {
    spec.validate()?;
    Ok(svg(drawing, drawing.positions(), spec))
}

/// Positions of every rendered frame: each step is sampled at
/// `samples_per_step` equally spaced times, and frames shared by
/// consecutive steps appear once.
pub fn morph_frames(morph: &Morph, samples_per_step: usize) -> Vec<Vec<Vec2>> {
    let s = samples_per_step.max(2);
    let mut frames = vec![morph.keyframes()[0].clone()];
    for i in 0..morph.num_steps() {
        let step = morph.step(i);
        for j in 1..s {
            frames.push(step.at(j as f64 / (s - 1) as f64));
        }
    }
    frames
}

/// One SVG per sampled frame of a morph of `drawing`'s graph.
pub fn render_morph(drawing: &Drawing, morph: &Morph, spec: &RenderSpec) -> Result<Vec<String>> {
    spec.validate()?;
    if morph.num_vertices() != drawing.num_vertices() {
        return Err(Error::GraphMismatch("morph and drawing differ in vertex count".into()));
    }
    Ok(morph_frames(morph, spec.samples_per_step).iter().map(|p| svg(drawing, p, spec)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{lattice, zipper};
    use crate::morph::zipper_morph;

    #[test]
    fn one_vertex_picture() {
        let d = lattice(1, 1, 0).unwrap();
        let spec = RenderSpec { replication: 1, ..RenderSpec::default() };
        let out = render_drawing(&d, &spec).unwrap();
        assert_eq!(out.matches("<circle").count(), 1);
        assert!(out.matches("stroke-dasharray").count() >= 3);
        assert_eq!(out, render_drawing(&d, &spec).unwrap());
    }

    #[test]
    fn two_step_morph_gives_nine_frames() {
        let z0 = zipper(3, 0).unwrap();
        let p: Vec<Vec2> = z0.positions().iter().map(|&q| q + Vec2::new(0.1, 0.05)).collect();
        let z1 = z0.with_positions(p).unwrap();
        let m = zipper_morph(&z0, &z1).unwrap();
        assert_eq!(m.num_steps(), 2);
        let frames = render_morph(&z0, &m, &RenderSpec::default()).unwrap();
        assert_eq!(frames.len(), 9);
        assert_eq!(frames[0], render_drawing(&z0, &RenderSpec::default()).unwrap());
    }

    #[test]
    fn rejects_bad_spec() {
        let d = lattice(2, 2, 0).unwrap();
        assert!(render_drawing(&d, &RenderSpec { samples_per_step: 1, ..RenderSpec::default() }).is_err());
    }
}
