//! Exact exterior differential calculus on finite simple graphs.
//!
//! Forms live on the clique complex of a graph: a k-form assigns an exact
//! rational to each (k+1)-clique and extends to all orderings by sign. The
//! crate provides the wedge product, the exterior derivative, the expansion
//! of a form over `dχ^v` products, an axiom checker that certifies whether a
//! candidate operator coincides with `d`, and rational cohomology.

pub mod calculus;
pub mod clique;
pub mod error;
pub mod forms;
pub mod cohomology;
pub mod graph;
pub mod io;
pub mod permutation;
pub mod rational;
pub mod sample;
pub mod selftest;
pub mod uniqueness;

pub use clique::{Clique, CliqueComplex};
pub use error::{Error, Result};
pub use forms::{chi, Evaluate, Form, Tensor};
pub use graph::{Graph, VertexId};
pub use rational::Rational;
