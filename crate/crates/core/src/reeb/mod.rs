//! Reeb graphs of PL scalar fields.
//!
//! [`compute_reeb_graph`] sweeps the sorted distinct vertex values. Every
//! level component at a vertex value and at the midpoint of each gap becomes
//! a node; nodes at consecutive levels are joined when they lie in the same
//! component of the preimage of the closed interval between the levels. A
//! node is then contracted when it has exactly one lower and one upper
//! neighbour and the preimage of the surrounding gap is a product collar
//! (an annulus around a circle, or a disk around an arc on surfaces with
//! boundary). The surviving nodes are the critical level components.
//!
//! [`sampled_reeb_oracle`] rebuilds the same graph from several samples per
//! gap using independent routes for level components, incidence, and the
//! collar test, and is used to cross-check the sweep.

mod clip;
mod flat;
mod graph;
mod iso;
mod level;
mod oracle;
mod slab;
mod sweep;

use serde::Serialize;

pub use flat::flat_clusters;


pub use level::{level_components, LevelComponent, LevelShape};

pub use slab::{interval_components, IntervalComponent};


/// A simplex of the mesh. Ordered vertices first, then edges, then triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Cell {
    Vertex(u32),
    Edge(u32),
    Triangle(u32),
}
pub use graph::{ReebEdge, ReebGraph, ReebNode};
pub use iso::{betti1, graph_isomorphic, IsoMode, Multigraph};
pub use oracle::{level_components_by_path_search, sampled_reeb_oracle};
pub use sweep::compute_reeb_graph;
