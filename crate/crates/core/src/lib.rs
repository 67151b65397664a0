//! Straight-line graph drawings on the flat torus and piecewise-linear
//! morphs between isotopic drawings.
//!
//! A [`Drawing`] pairs a combinatorial [`DartGraph`] with a coordinate
//! representation: a position for every vertex in the plane and an integer
//! translation vector for every dart. The morph pipeline collapses vertices
//! until a zipper remains, relaxes both drawings to a common Tutte
//! equilibrium and perturbs the collapses into genuine morph steps.

pub mod collapse;
pub mod equilibrium;
mod error;
pub mod generate;
pub mod geometry;
pub mod graph;
pub mod isotopy;
pub mod morph;
pub mod render;

pub use error::{Error, Result};
pub use geometry::{IVec2, Vec2};
pub use graph::{CoordRep, DartGraph, DartId, Drawing, EdgeId, VertexId};
