//! Exact chord theorems on metric graphs.
//!
//! A metric graph is a multigraph whose edges are unit intervals. Given a
//! zero-mean step function on it, the solvers here find closed connected
//! subsets of a prescribed measure over which the function integrates to
//! zero, together with the machinery they rest on: double covers by
//! semi-simple closed paths, homotopies in the space of connected subsets,
//! and interval, circle and necklace chord solvers. All arithmetic is exact.

pub mod chords;
pub mod cli;
pub mod cover;
pub mod error;
pub mod game;
pub mod homotopy;
pub mod interval;
pub mod metric;
pub mod partition;
pub mod random;
pub mod rational;
pub mod service;
pub mod step;
pub mod wire;

pub use error::{ChordError, Result};
pub use rational::Rational;
