//! Reconstruction of curves (2D) and surfaces (3D) from sparse, possibly
//! noisy point clouds.
//!
//! The method evolves a level-set function `u` under the degenerate
//! parabolic equation
//!
//! ```text
//! u_t = d(x) |Du| div(Du/|Du|) + Dd(x) · Du
//! ```
//!
//! where `d(x)` is the Euclidean distance from the data set `S`. The zero
//! level set of `u` is pulled towards `S` by the advection term while the
//! curvature term keeps it smooth; the reconstructed geometry is the zero
//! level set in the large-time regime.
//!
//! Time stepping is semi-Lagrangian: each node update is a convex
//! combination of interpolated values of the previous iterate at displaced
//! sample points, so the scheme is explicit yet free of a parabolic CFL
//! restriction. Space reconstruction uses radial basis functions with a
//! linear polynomial part, which allows the computational nodes to be
//! restricted to a narrow band around the data set, with far-field
//! "anchor" nodes acting as boundary conditions.
//!
//! The crate is organized around the stages of that pipeline:
//!
//! - [`pointcloud`]: data sets, synthetic shapes, noise.
//! - [`distance`]: the distance field `d` and its gradient `Dd`.
//! - [`rbf`]: RBF interpolation with reusable factorizations.
//! - [`grid`]: full/reduced node sets, anchor frames, initial condition.
//! - [`scheme`]: the 2D/3D semi-Lagrangian steppers and the outer loop.
//! - [`extract`]: contouring, isosurfacing, energy diagnostics, export.
//! - [`pipeline`]: declarative experiment configurations and presets.
//!
//! See the `examples/` directory for one runnable program per capability,
//! and the `recon` binary for a command-line front end.

pub mod distance;
pub mod error;
pub mod extract;
pub mod grid;
pub mod kdtree;
mod mc_tables;
pub mod pipeline;
pub mod pointcloud;
pub mod rbf;
pub mod scheme;

pub use error::{Error, Result};

/// A point (or vector) of the computational domain.
pub type Point<const D: usize> = nalgebra::SVector<f64, D>;

/// Something that can be evaluated, with its gradient, anywhere in space.
///
/// The semi-Lagrangian steppers are written against this trait so that the
/// RBF interpolant can be swapped for exact or grid-based reconstructions
/// in tests.
pub trait Field<const D: usize>: Sync {
    fn value(&self, x: &Point<D>) -> f64;
    fn gradient(&self, x: &Point<D>) -> Point<D>;
}
