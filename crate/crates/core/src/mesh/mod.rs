//! Triangulated surfaces: storage, validation, classification, and I/O.

mod build;
mod classify;
pub mod io;
mod surface;

pub use build::{
    annulus, grid_torus, octahedron, pair_of_pants, projective_plane, single_triangle,
    standard_mobius_strip, subdivide, torus7, GridTorus,
};
pub use classify::{split_components, 
    boundary_components, connected_components, euler_characteristic, orientability, signature,
    SurfaceSignature,
};
pub use surface::{validate_surface, SimplicialSurface, TriangleSoup, ValidationReport, Violation};
