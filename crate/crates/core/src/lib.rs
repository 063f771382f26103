//! Phase-field approximation of mean curvature flow for thin structures
//! (filaments, soap films) on periodic Cartesian grids.
//!
//! The solver evolves an Allen-Cahn equation whose reaction term is amplified
//! by a skeleton-detecting forcing field. The forcing concentrates on the
//! medial axis of the evolving set and acts as a repulsive barrier that keeps
//! the set from thinning below a prescribed scale, so tubular neighborhoods of
//! curves and surfaces can be flowed by mean curvature without vanishing or
//! changing topology. Constraint modes add pointwise inclusion lower bounds
//! (Steiner networks spanning given sites) and a volume penalization (Plateau
//! films spanning a boundary curve).
//!
//! Everything runs on a uniform periodic grid; convolutions and the implicit
//! part of the time stepper are Fourier multipliers.

pub mod config;
pub mod diagnostics;
pub mod error;
pub mod evolver;
pub mod geometry;
pub mod grid;
pub mod io;
pub mod skeleton;
pub mod spectral;

pub use error::{Error, Result};
pub use grid::{gradient, GradientMethod, Grid, ScalarField, VectorField};
