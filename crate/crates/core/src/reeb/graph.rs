use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::iso::Multigraph;
use super::Cell;
use crate::error::ParseError;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReebNode {
    pub id: usize,
    pub level: Rational,
    pub critical: bool,
    /// Cells of the level component this node stands for.
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReebEdge {
    pub id: usize,
    /// Lower endpoint first.
    pub ends: [usize; 2],
    /// Levels of the two endpoints; the edge is the open interval between.
    pub interval: [Rational; 2],
    /// Cells of the regular level components contracted into this edge.
    pub cells: Vec<Cell>,
}

/// Loop-free multigraph with a level per node; the Reeb space together with
/// its induced map to the line.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReebGraph {
    pub nodes: Vec<ReebNode>,
    pub edges: Vec<ReebEdge>,
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    nodes: Vec<JsonNode>,
    edges: Vec<JsonEdge>,
}

#[derive(Serialize, Deserialize)]
struct JsonNode {
    id: usize,
    level: String,
    critical: bool,
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    id: usize,
    ends: [usize; 2],
    interval: [String; 2],
}

impl ReebGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn betti1(&self) -> usize {
        super::iso::betti1(&self.skeleton())
    }

    /// Node levels as labels; node and edge ids are positions.
    pub fn skeleton(&self) -> Multigraph {
        Multigraph::with_levels(
            self.edges.iter().map(|e| (e.ends[0], e.ends[1])).collect(),
            self.nodes.iter().map(|n| n.level.clone()).collect(),
        )
    }

    /// Checks the structural invariants: dense ids, no loops, and edge
    /// intervals equal to strictly increasing endpoint levels.
    pub fn check_invariants(&self) -> Result<(), String> {
        for (i, n) in self.nodes.iter().enumerate() {
            if n.id != i {
                return Err(format!("node {i} has id {}", n.id));
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.id != i {
                return Err(format!("edge {i} has id {}", e.id));
            }
            let [a, b] = e.ends;
            if a == b {
                return Err(format!("edge {i} is a loop"));
            }
            let (na, nb) = match (self.nodes.get(a), self.nodes.get(b)) {
                (Some(x), Some(y)) => (x, y),
                _ => return Err(format!("edge {i} references a missing node")),
            };
            if e.interval[0] != na.level || e.interval[1] != nb.level {
                return Err(format!("edge {i} interval does not match its endpoint levels"));
            }
            if na.level >= nb.level {
                return Err(format!("edge {i} is not strictly increasing"));
            }
        }
        Ok(())
    }

    /// Canonical machine-readable form.
    pub fn to_json(&self) -> String {
        let g = JsonGraph {
            nodes: self
                .nodes
                .iter()
                .map(|n| JsonNode { id: n.id, level: rational::format(&n.level), critical: n.critical })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| JsonEdge {
                    id: e.id,
                    ends: e.ends,
                    interval: [rational::format(&e.interval[0]), rational::format(&e.interval[1])],
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&g).expect("graph serializes");
        s.push('\n');
        s
    }

    /// Parses [`ReebGraph::to_json`] output. Provenance cells are not part of
    /// the format and come back empty.
    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let g: JsonGraph = serde_json::from_str(text)?;
        let nodes = g
            .nodes
            .into_iter()
            .map(|n| {
                Ok(ReebNode { id: n.id, level: rational::parse(&n.level)?, critical: n.critical, cells: Vec::new() })
            })
            .collect::<Result<_, ParseError>>()?;
        let edges = g
            .edges
            .into_iter()
            .map(|e| {
                Ok(ReebEdge {
                    id: e.id,
                    ends: e.ends,
                    interval: [rational::parse(&e.interval[0])?, rational::parse(&e.interval[1])?],
                    cells: Vec::new(),
                })
            })
            .collect::<Result<_, ParseError>>()?;
        Ok(Self { nodes, edges })
    }

    /// Graphviz rendering; parallel edges are repeated.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph reeb {\n");
        for n in &self.nodes {
            let _ = writeln!(out, "  n{} [label=\"{}@{}\"];", n.id, n.id, rational::format(&n.level));
        }
        for e in &self.edges {
            let _ = writeln!(out, "  n{} -- n{};", e.ends[0], e.ends[1]);
        }
        out.push_str("}\n");
        out
    }
}
