//! Closed surfaces and PL fields with a prescribed Reeb graph.
//!
//! Every vertex of a decorated graph becomes a flat block of its surface
//! type at the vertex height; every edge becomes a tube of concentric rings
//! with strictly increasing values, bridged to one free boundary polygon of
//! each endpoint block.

mod blocks;
mod decoration;
mod verify;

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

pub use blocks::{build_edge_tube, build_vertex_block, VertexBlock};
pub use decoration::{
    assign_heights, orient_edges, validate_decoration, DecoratedEdge, DecoratedGraph, DecoratedVertex,
    DecorationViolation,
};
pub use verify::{check_realization, check_realization_with, verify_realization, VerificationReport, VerifyOptions};

use crate::error::{ParseError, RealizeError};
use crate::field::ScalarField;
use crate::mesh::{SimplicialSurface, SurfaceSignature, TriangleSoup};
use crate::rational::{from_int, to_f64};
use crate::reeb::{betti1, Multigraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealizeOptions {
    /// Vertices per boundary polygon.
    pub p: usize,
    /// Rings per tube.
    pub rings: usize,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        Self { p: 6, rings: 2 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCells {
    pub id: String,
    pub height: i64,
    pub triangles: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TubeCells {
    pub id: String,
    pub triangles: Vec<u32>,
}

/// Which triangles realize which graph element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correspondence {
    pub vertices: Vec<BlockCells>,
    pub edges: Vec<TubeCells>,
}

impl Correspondence {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string(self).expect("plain data serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn heights(&self) -> Vec<i64> {
        self.vertices.iter().map(|v| v.height).collect()
    }
}

#[derive(Debug, Clone)]
pub struct RealizationOutput {
    pub mesh: SimplicialSurface,
    pub field: ScalarField,
    pub correspondence: Correspondence,
}

fn reversed_from_start(cycle: &[u32]) -> Vec<u32> {
    std::iter::once(cycle[0]).chain(cycle[1..].iter().rev().copied()).collect()
}

/// Glues blocks and tubes into one closed surface with a field whose Reeb
/// graph is the skeleton of `dg`.
pub fn realize(dg: &DecoratedGraph, options: &RealizeOptions) -> Result<RealizationOutput, RealizeError> {
    validate_decoration(dg).map_err(RealizeError::InvalidDecoration)?;
    let heights = assign_heights(dg)?;
    let RealizeOptions { p, rings } = *options;
    if p < 3 || rings < 2 {
        return Err(RealizeError::InvalidParameter(format!("need p >= 3 and rings >= 2, got p = {p}, rings = {rings}")));
    }

    let mut triangles: Vec<[u32; 3]> = Vec::new();
    let mut values = Vec::new();
    let mut free: Vec<std::vec::IntoIter<Vec<u32>>> = Vec::with_capacity(dg.vertices.len());
    let mut block_cells = Vec::with_capacity(dg.vertices.len());
    for (v, &h) in dg.vertices.iter().zip(&heights) {
        let block = build_vertex_block(v.gamma, p)?;
        let offset = values.len() as u32;
        let first = triangles.len() as u32;
        triangles.extend(block.mesh.triangles().iter().map(|t| t.map(|x| x + offset)));
        values.extend(std::iter::repeat_n(from_int(h), block.mesh.vertex_count()));
        free.push(
            block
                .boundaries
                .into_iter()
                .map(|c| c.into_iter().map(|x| x + offset).collect::<Vec<_>>())
                .collect::<Vec<_>>()
                .into_iter(),
        );
        block_cells.push(BlockCells { id: v.id.clone(), height: h, triangles: (first..triangles.len() as u32).collect() });
    }

    let mut tube_cells = Vec::with_capacity(dg.edges.len());
    for (e, [lo, hi]) in dg.edges.iter().zip(orient_edges(dg, &heights)) {
        let (tube, tube_field) = build_edge_tube(p, rings, heights[lo], heights[hi])?;
        let offset = values.len() as u32;
        let first = triangles.len() as u32;
        let ring = |k: usize| -> Vec<u32> { (0..p).map(|i| offset + (k * p + i) as u32).collect() };
        let below = free[lo].next().expect("boundary count equals degree");
        let above = free[hi].next().expect("boundary count equals degree");
        triangles.extend(blocks::band(&below, &ring(0)));
        triangles.extend(tube.triangles().iter().map(|t| t.map(|x| x + offset)));
        triangles.extend(blocks::band(&ring(rings - 1), &reversed_from_start(&above)));
        values.extend(tube_field.values().iter().cloned());
        tube_cells.push(TubeCells { id: e.id.clone(), triangles: (first..triangles.len() as u32).collect() });
    }

    let n = values.len();
    let positions = values
        .iter()
        .enumerate()
        .map(|(k, z)| {
            let a = TAU * k as f64 / n as f64;
            [a.cos(), a.sin(), to_f64(z)]
        })
        .collect();
    let mesh = SimplicialSurface::new(TriangleSoup::new(positions, triangles))?;
    Ok(RealizationOutput {
        mesh,
        field: ScalarField::new(values),
        correspondence: Correspondence { vertices: block_cells, edges: tube_cells },
    })
}

/// Realizes a connected loop-free multigraph on the closed orientable surface
/// of the given genus. Every vertex is a planar block except vertex 0, which
/// carries the handles beyond the graph's first Betti number.
pub fn realize_on_surface(
    graph: &Multigraph,
    genus: i64,
    options: &RealizeOptions,
) -> Result<RealizationOutput, RealizeError> {
    if let Some(k) = graph.edges.iter().position(|&(a, b)| a == b) {
        return Err(RealizeError::LoopEdge(format!("e{k}")));
    }
    if graph.node_count == 0 || graph.component_count() != 1 {
        return Err(RealizeError::DisconnectedGraph);
    }
    let b1 = betti1(graph);
    if genus < b1 as i64 {
        return Err(RealizeError::GenusTooSmall { genus, betti1: b1 });
    }
    let mut dg = DecoratedGraph::planar(graph);
    dg.vertices[0].gamma = SurfaceSignature::orientable((genus - b1 as i64) as u32, graph.degree(0) as u32);
    realize(&dg, options)
}
