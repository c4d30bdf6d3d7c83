use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ParseError, RealizeError};
use crate::mesh::SurfaceSignature;
use crate::rational::from_int;
use crate::reeb::Multigraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedVertex {
    pub id: String,
    pub gamma: SurfaceSignature,
    pub height: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedEdge {
    pub id: String,
    /// Indices into [`DecoratedGraph::vertices`].
    pub ends: [usize; 2],
}

/// A multigraph with a compact surface attached to every vertex. Every edge
/// carries a circle.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DecoratedGraph {
    pub vertices: Vec<DecoratedVertex>,
    pub edges: Vec<DecoratedEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum DecorationViolation {
    LoopEdge { edge: String },
    CobMismatch { vertex: String, boundary: u32, degree: usize },
    InvalidSignature { vertex: String, message: String },
    IsolatedVertexWithBoundary { vertex: String, boundary: u32 },
}

impl fmt::Display for DecorationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LoopEdge { edge } => write!(f, "edge {edge:?} is a loop"),
            Self::CobMismatch { vertex, boundary, degree } => {
                write!(f, "vertex {vertex:?} has {boundary} boundary circles but degree {degree}")
            }
            Self::InvalidSignature { vertex, message } => write!(f, "vertex {vertex:?}: {message}"),
            Self::IsolatedVertexWithBoundary { vertex, boundary } => {
                write!(f, "isolated vertex {vertex:?} has {boundary} boundary circles")
            }
        }
    }
}

#[derive(Deserialize, Serialize)]
struct VertexJson {
    id: String,
    #[serde(default = "yes")]
    orientable: bool,
    #[serde(default)]
    genus: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    boundary: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    height: Option<i64>,
}

fn yes() -> bool {
    true
}

#[derive(Deserialize, Serialize)]
struct EdgeJson {
    id: String,
    ends: [String; 2],
}

#[derive(Deserialize, Serialize)]
struct GraphJson {
    vertices: Vec<VertexJson>,
    #[serde(default)]
    edges: Vec<EdgeJson>,
}

impl DecoratedGraph {
    /// Every vertex decorated with the planar surface of matching boundary
    /// count, i.e. a sphere with `deg(v)` holes.
    pub fn planar(graph: &Multigraph) -> Self {
        let vertices = (0..graph.node_count)
            .map(|v| DecoratedVertex {
                id: format!("v{v}"),
                gamma: SurfaceSignature::orientable(0, graph.degree(v) as u32),
                height: None,
            })
            .collect();
        let edges = graph
            .edges
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| DecoratedEdge { id: format!("e{k}"), ends: [a, b] })
            .collect();
        Self { vertices, edges }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|e| (e.ends[0] == v) as usize + (e.ends[1] == v) as usize).sum()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    /// Underlying multigraph without levels.
    pub fn graph(&self) -> Multigraph {
        Multigraph::new(self.vertices.len(), self.edges.iter().map(|e| (e.ends[0], e.ends[1])).collect())
    }

    /// Multigraph with each vertex at its height.
    pub fn skeleton(&self, heights: &[i64]) -> Multigraph {
        Multigraph::with_levels(
            self.edges.iter().map(|e| (e.ends[0], e.ends[1])).collect(),
            heights.iter().map(|&h| from_int(h)).collect(),
        )
    }

    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let raw: GraphJson = serde_json::from_str(text)?;
        let mut index = HashMap::new();
        for (i, v) in raw.vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(ParseError::DuplicateId(v.id.clone()));
            }
        }
        let mut edges = Vec::with_capacity(raw.edges.len());
        let mut seen = HashMap::new();
        for e in raw.edges {
            if seen.insert(e.id.clone(), ()).is_some() {
                return Err(ParseError::DuplicateId(e.id));
            }
            let lookup = |id: &String| index.get(id).copied().ok_or_else(|| ParseError::UnknownVertex(id.clone()));
            let ends = [lookup(&e.ends[0])?, lookup(&e.ends[1])?];
            edges.push(DecoratedEdge { id: e.id, ends });
        }
        let mut graph = Self { vertices: Vec::new(), edges };
        for (i, v) in raw.vertices.into_iter().enumerate() {
            let boundary = v.boundary.unwrap_or_else(|| graph.degree(i) as u32);
            graph.vertices.push(DecoratedVertex {
                id: v.id,
                gamma: SurfaceSignature::new(v.orientable, v.genus, boundary),
                height: v.height,
            });
        }
        Ok(graph)
    }

    pub fn to_json(&self) -> String {
        let raw = GraphJson {
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexJson {
                    id: v.id.clone(),
                    orientable: v.gamma.orientable,
                    genus: v.gamma.genus,
                    boundary: Some(v.gamma.boundary_count),
                    height: v.height,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    id: e.id.clone(),
                    ends: [self.vertices[e.ends[0]].id.clone(), self.vertices[e.ends[1]].id.clone()],
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&raw).expect("plain data serializes");
        text.push('\n');
        text
    }
}

/// All violations of the decoration invariants, in vertex then edge order.
pub fn validate_decoration(dg: &DecoratedGraph) -> Result<(), Vec<DecorationViolation>> {
    let mut violations = Vec::new();
    for (i, v) in dg.vertices.iter().enumerate() {
        let degree = dg.degree(i);
        if let Err(e) = v.gamma.validate() {
            violations.push(DecorationViolation::InvalidSignature { vertex: v.id.clone(), message: e.to_string() });
        }
        let boundary = v.gamma.boundary_count;
        if degree == 0 && boundary > 0 {
            violations.push(DecorationViolation::IsolatedVertexWithBoundary { vertex: v.id.clone(), boundary });
        } else if boundary as usize != degree {
            violations.push(DecorationViolation::CobMismatch { vertex: v.id.clone(), boundary, degree });
        }
    }
    for e in &dg.edges {
        if e.ends[0] == e.ends[1] {
            violations.push(DecorationViolation::LoopEdge { edge: e.id.clone() });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// Injective integer heights, one per vertex: the user's when every vertex
/// carries one, otherwise `0, 1, 2, …` in vertex order.
pub fn assign_heights(dg: &DecoratedGraph) -> Result<Vec<i64>, RealizeError> {
    let given = dg.vertices.iter().filter(|v| v.height.is_some()).count();
    if given == 0 {
        return Ok((0..dg.vertices.len() as i64).collect());
    }
    if given != dg.vertices.len() {
        return Err(RealizeError::InvalidParameter(
            "heights must be given for every vertex or for none".into(),
        ));
    }
    let mut owner: HashMap<i64, &str> = HashMap::new();
    let mut heights = Vec::with_capacity(dg.vertices.len());
    for v in &dg.vertices {
        let h = v.height.unwrap();
        if let Some(prev) = owner.insert(h, &v.id) {
            return Err(RealizeError::NonInjectiveHeights(prev.to_string(), v.id.clone()));
        }
        heights.push(h);
    }
    Ok(heights)
}

/// Edge endpoints ordered from lower to higher height.
pub fn orient_edges(dg: &DecoratedGraph, heights: &[i64]) -> Vec<[usize; 2]> {
    dg.edges
        .iter()
        .map(|e| {
            let [a, b] = e.ends;
            if heights[a] < heights[b] {
                [a, b]
            } else {
                [b, a]
            }
        })
        .collect()
}
