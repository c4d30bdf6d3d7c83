use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::MeshError;

/// Raw triangles as read from a file, before any manifold checks.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TriangleSoup {
    /// Carried through I/O unchanged; never used for topology.
    pub positions: Vec<[f64; 3]>,
    pub triangles: Vec<[u32; 3]>,
}

impl TriangleSoup {
    pub fn new(positions: Vec<[f64; 3]>, triangles: Vec<[u32; 3]>) -> Self {
        Self { positions, triangles }
    }

    /// Soup with all-zero coordinates.
    pub fn from_triangles(vertex_count: usize, triangles: Vec<[u32; 3]>) -> Self {
        Self::new(vec![[0.0; 3]; vertex_count], triangles)
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    VertexOutOfRange { triangle: usize, vertex: u32 },
    DegenerateTriangle { triangle: usize },
    DuplicateTriangle { triangle: usize, first: usize },
    NonManifoldEdge { edge: [u32; 2], triangles: usize },
    NonManifoldVertex { vertex: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange { triangle, vertex } => {
                write!(f, "triangle {triangle} references missing vertex {vertex}")
            }
            Violation::DegenerateTriangle { triangle } => {
                write!(f, "triangle {triangle} is degenerate")
            }
            Violation::DuplicateTriangle { triangle, first } => {
                write!(f, "triangle {triangle} duplicates triangle {first}")
            }
            Violation::NonManifoldEdge { edge, triangles } => {
                write!(f, "edge {}-{} lies in {triangles} triangles", edge[0], edge[1])
            }
            Violation::NonManifoldVertex { vertex } => {
                write!(f, "link of vertex {vertex} is not a single path or cycle")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

#[inline]
pub(crate) fn edge_key(a: u32, b: u32) -> (u32, u32) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Checks every manifold-with-boundary condition on a triangle soup.
pub fn validate_surface(soup: &TriangleSoup) -> ValidationReport {
    let n = soup.vertex_count();
    let mut violations = Vec::new();
    let mut usable = Vec::with_capacity(soup.triangles.len());

    let mut seen: HashMap<[u32; 3], usize> = HashMap::new();
    for (ti, t) in soup.triangles.iter().enumerate() {
        if let Some(&v) = t.iter().find(|&&v| v as usize >= n) {
            violations.push(Violation::VertexOutOfRange { triangle: ti, vertex: v });
            continue;
        }
        if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
            violations.push(Violation::DegenerateTriangle { triangle: ti });
            continue;
        }
        let mut key = *t;
        key.sort_unstable();
        if let Some(&first) = seen.get(&key) {
            violations.push(Violation::DuplicateTriangle { triangle: ti, first });
            continue;
        }
        seen.insert(key, ti);
        usable.push(*t);
    }

    let mut edge_count: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for t in &usable {
        for k in 0..3 {
            *edge_count.entry(edge_key(t[k], t[(k + 1) % 3])).or_default() += 1;
        }
    }
    for (&(a, b), &count) in &edge_count {
        if count > 2 {
            violations.push(Violation::NonManifoldEdge { edge: [a, b], triangles: count });
        }
    }

    let mut links: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    for t in &usable {
        for k in 0..3 {
            links[t[k] as usize].push((t[(k + 1) % 3], t[(k + 2) % 3]));
        }
    }
    for (v, link) in links.iter().enumerate() {
        if !link_is_path_or_cycle(link) {
            violations.push(Violation::NonManifoldVertex { vertex: v as u32 });
        }
    }

    ValidationReport { violations }
}

/// True iff the edge list forms exactly one simple path or one simple cycle.
fn link_is_path_or_cycle(link: &[(u32, u32)]) -> bool {
    if link.is_empty() {
        return false;
    }
    let mut adj: HashMap<u32, Vec<u32>> = HashMap::new();
    let mut distinct = HashSet::new();
    for &(a, b) in link {
        if !distinct.insert(edge_key(a, b)) {
            return false;
        }
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.values().any(|nb| nb.len() > 2) {
        return false;
    }
    // connectivity
    let start = link[0].0;
    let mut stack = vec![start];
    let mut visited = HashSet::from([start]);
    while let Some(x) = stack.pop() {
        for &y in &adj[&x] {
            if visited.insert(y) {
                stack.push(y);
            }
        }
    }
    if visited.len() != adj.len() {
        return false;
    }
    let vertices = adj.len();
    link.len() == vertices || link.len() + 1 == vertices
}

/// A validated triangulated 2-manifold, possibly with boundary and possibly
/// disconnected.
///
/// Vertex ids are dense and 0-based. Triangle vertex order is kept exactly as
/// given and serves as the orientation witness.
#[derive(Debug, Clone)]
pub struct SimplicialSurface {
    positions: Vec<[f64; 3]>,
    triangles: Vec<[u32; 3]>,
    edges: Vec<[u32; 2]>,
    edge_lookup: HashMap<(u32, u32), u32>,
    edge_triangles: Vec<Vec<u32>>,
    triangle_edges: Vec<[u32; 3]>,
    vertex_triangles: Vec<Vec<u32>>,
    vertex_edges: Vec<Vec<u32>>,
}

impl SimplicialSurface {
    pub fn new(soup: TriangleSoup) -> Result<Self, MeshError> {
        let report = validate_surface(&soup);
        if !report.is_ok() {
            return Err(MeshError::Invalid(report));
        }
        Ok(Self::build(soup))
    }

    pub fn from_triangles(vertex_count: usize, triangles: Vec<[u32; 3]>) -> Result<Self, MeshError> {
        Self::new(TriangleSoup::from_triangles(vertex_count, triangles))
    }

    fn build(soup: TriangleSoup) -> Self {
        let TriangleSoup { positions, triangles } = soup;
        let n = positions.len();
        let mut keys: Vec<(u32, u32)> = triangles
            .iter()
            .flat_map(|t| (0..3).map(move |k| edge_key(t[k], t[(k + 1) % 3])))
            .collect();
        keys.sort_unstable();
        keys.dedup();
        let edge_lookup: HashMap<(u32, u32), u32> =
            keys.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
        let edges: Vec<[u32; 2]> = keys.iter().map(|&(a, b)| [a, b]).collect();

        let mut edge_triangles = vec![Vec::with_capacity(2); edges.len()];
        let mut triangle_edges = Vec::with_capacity(triangles.len());
        let mut vertex_triangles = vec![Vec::new(); n];
        let mut vertex_edges = vec![Vec::new(); n];
        for (ti, t) in triangles.iter().enumerate() {
            let mut te = [0u32; 3];
            for k in 0..3 {
                let e = edge_lookup[&edge_key(t[k], t[(k + 1) % 3])];
                te[k] = e;
                edge_triangles[e as usize].push(ti as u32);
                vertex_triangles[t[k] as usize].push(ti as u32);
            }
            triangle_edges.push(te);
        }
        for (ei, e) in edges.iter().enumerate() {
            vertex_edges[e[0] as usize].push(ei as u32);
            vertex_edges[e[1] as usize].push(ei as u32);
        }
        Self {
            positions,
            triangles,
            edges,
            edge_lookup,
            edge_triangles,
            triangle_edges,
            vertex_triangles,
            vertex_edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn positions(&self) -> &[[f64; 3]] {
        &self.positions
    }

    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.triangles
    }

    #[inline]
    pub fn triangle(&self, t: u32) -> [u32; 3] {
        self.triangles[t as usize]
    }

    /// Edges as sorted vertex pairs, indexed by edge id.
    pub fn edges(&self) -> &[[u32; 2]] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, e: u32) -> [u32; 2] {
        self.edges[e as usize]
    }

    pub fn edge_id(&self, a: u32, b: u32) -> Option<u32> {
        self.edge_lookup.get(&edge_key(a, b)).copied()
    }

    /// Triangles containing the edge (one or two).
    #[inline]
    pub fn edge_triangles(&self, e: u32) -> &[u32] {
        &self.edge_triangles[e as usize]
    }

    /// Edge ids of triangle sides `t[0]t[1]`, `t[1]t[2]`, `t[2]t[0]`.
    #[inline]
    pub fn triangle_edges(&self, t: u32) -> [u32; 3] {
        self.triangle_edges[t as usize]
    }

    #[inline]
    pub fn vertex_triangles(&self, v: u32) -> &[u32] {
        &self.vertex_triangles[v as usize]
    }

    #[inline]
    pub fn vertex_edges(&self, v: u32) -> &[u32] {
        &self.vertex_edges[v as usize]
    }

    pub fn is_boundary_edge(&self, e: u32) -> bool {
        self.edge_triangles[e as usize].len() == 1
    }

    pub fn is_closed(&self) -> bool {
        self.edge_triangles.iter().all(|t| t.len() == 2)
    }

    pub fn to_soup(&self) -> TriangleSoup {
        TriangleSoup::new(self.positions.clone(), self.triangles.clone())
    }

    /// Same surface with replaced coordinates. Panics on a length mismatch.
    pub fn with_positions(mut self, positions: Vec<[f64; 3]>) -> Self {
        assert_eq!(positions.len(), self.positions.len());
        self.positions = positions;
        self
    }
}
