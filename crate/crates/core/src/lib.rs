//! Reeb graphs of piecewise-linear scalar fields on triangulated surfaces.
//!
//! The crate is split into three layers:
//!
//! - [`mesh`]: exact triangulated surfaces, validation, classification by
//!   [`SurfaceSignature`], and OFF / field-file I/O.
//! - [`reeb`]: level sets, interval preimages, the Reeb graph sweep, an
//!   independent sampling oracle, and multigraph isomorphism.
//! - [`realize`]: synthesis of a closed surface and a PL field whose Reeb graph
//!   is a prescribed decorated multigraph, plus round-trip verification.
//!
//! Field values are exact rationals everywhere; no floating tolerance is used
//! for any topological decision.

pub mod error;
pub mod field;
pub mod mesh;
pub mod rational;
pub mod realize;
pub mod reeb;

pub use error::{MeshError, ParseError, RealizeError};
pub use field::ScalarField;
pub use mesh::{SimplicialSurface, SurfaceSignature, TriangleSoup};
pub use rational::Rational;
pub use realize::{DecoratedGraph, RealizationOutput, RealizeOptions};
pub use reeb::{compute_reeb_graph, sampled_reeb_oracle, Cell, Multigraph, ReebGraph};
