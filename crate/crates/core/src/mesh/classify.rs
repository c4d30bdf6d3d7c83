use std::collections::VecDeque;
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::surface::{SimplicialSurface, TriangleSoup};
use crate::error::MeshError;

/// Complete invariant of a compact connected surface.
///
/// `genus` counts handles when `orientable`, crosscaps otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurfaceSignature {
    pub orientable: bool,
    pub genus: u32,
    pub boundary_count: u32,
    pub euler_char: i64,
}

impl SurfaceSignature {
    pub fn orientable(genus: u32, boundary_count: u32) -> Self {
        Self {
            orientable: true,
            genus,
            boundary_count,
            euler_char: 2 - 2 * genus as i64 - boundary_count as i64,
        }
    }

    pub fn non_orientable(crosscaps: u32, boundary_count: u32) -> Self {
        Self {
            orientable: false,
            genus: crosscaps,
            boundary_count,
            euler_char: 2 - crosscaps as i64 - boundary_count as i64,
        }
    }

    pub fn new(orientable: bool, genus: u32, boundary_count: u32) -> Self {
        if orientable {
            Self::orientable(genus, boundary_count)
        } else {
            Self::non_orientable(genus, boundary_count)
        }
    }

    pub fn sphere() -> Self {
        Self::orientable(0, 0)
    }

    pub fn disk() -> Self {
        Self::orientable(0, 1)
    }

    pub fn annulus() -> Self {
        Self::orientable(0, 2)
    }

    /// Checks the classification equations and the crosscap lower bound.
    pub fn validate(&self) -> Result<(), MeshError> {
        if !self.orientable && self.genus == 0 {
            return Err(MeshError::InvalidSignature(
                "a non-orientable surface needs at least one crosscap".into(),
            ));
        }
        let expected = Self::new(self.orientable, self.genus, self.boundary_count).euler_char;
        if expected != self.euler_char {
            return Err(MeshError::InvalidSignature(format!(
                "euler characteristic {} does not match {} (expected {expected})",
                self.euler_char, self
            )));
        }
        Ok(())
    }
}

impl fmt::Display for SurfaceSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orientable {
            write!(f, "(orientable, genus {}, ", self.genus)?;
        } else {
            write!(f, "(non-orientable, crosscaps {}, ", self.genus)?;
        }
        write!(f, "boundary {}, chi {})", self.boundary_count, self.euler_char)
    }
}

impl Serialize for SurfaceSignature {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("orientable", &self.orientable)?;
        let key = if self.orientable { "genus" } else { "crosscaps" };
        map.serialize_entry(key, &self.genus)?;
        map.serialize_entry("boundary", &self.boundary_count)?;
        map.serialize_entry("chi", &self.euler_char)?;
        map.end()
    }
}

/// V − E + F.
pub fn euler_characteristic(mesh: &SimplicialSurface) -> i64 {
    mesh.vertex_count() as i64 - mesh.edge_count() as i64 + mesh.triangle_count() as i64
}

/// Groups triangles into edge-connected components, each sorted, ordered by
/// smallest triangle id.
pub fn connected_components(mesh: &SimplicialSurface) -> Vec<Vec<u32>> {
    let mut uf = UnionFind::<u32>::new(mesh.triangle_count());
    for e in 0..mesh.edge_count() as u32 {
        let ts = mesh.edge_triangles(e);
        if ts.len() == 2 {
            uf.union(ts[0], ts[1]);
        }
    }
    // Vertex-connected implies edge-connected on a validated surface.
    let mut groups: Vec<Vec<u32>> = Vec::new();
    let mut slot = vec![usize::MAX; mesh.triangle_count()];
    for t in 0..mesh.triangle_count() as u32 {
        let root = uf.find(t) as usize;
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(t);
    }
    groups
}

/// Splits a surface into its connected pieces with dense vertex ids. The
/// second element maps each local vertex id back to the original.
pub fn split_components(mesh: &SimplicialSurface) -> Vec<(SimplicialSurface, Vec<u32>)> {
    connected_components(mesh)
        .into_iter()
        .map(|tris| {
            let mut local = std::collections::HashMap::new();
            let mut back = Vec::new();
            let mut triangles = Vec::with_capacity(tris.len());
            for t in tris {
                let tri = mesh.triangle(t).map(|v| {
                    *local.entry(v).or_insert_with(|| {
                        back.push(v);
                        back.len() as u32 - 1
                    })
                });
                triangles.push(tri);
            }
            let positions = back.iter().map(|&v| mesh.positions()[v as usize]).collect();
            let piece = SimplicialSurface::new(TriangleSoup::new(positions, triangles))
                .expect("component of a valid surface is valid");
            (piece, back)
        })
        .collect()
}

fn require_connected(mesh: &SimplicialSurface) -> Result<(), MeshError> {
    let count = connected_components(mesh).len();
    if count != 1 {
        return Err(MeshError::DisconnectedMesh(count));
    }
    Ok(())
}

/// Breadth-first orientation propagation over the triangle adjacency graph.
///
/// Returns the consistently oriented triangle list (triangle 0 keeps its
/// given order) when the surface is orientable, `None` otherwise.
pub fn orientability(mesh: &SimplicialSurface) -> Result<Option<Vec<[u32; 3]>>, MeshError> {
    require_connected(mesh)?;
    let n = mesh.triangle_count();
    // +1 keeps the stored order, -1 reverses it.
    let mut sign = vec![0i8; n];
    let mut queue = VecDeque::new();
    sign[0] = 1;
    queue.push_back(0u32);
    while let Some(t) = queue.pop_front() {
        let tri = mesh.triangle(t);
        for k in 0..3 {
            let (mut a, mut b) = (tri[k], tri[(k + 1) % 3]);
            if sign[t as usize] < 0 {
                std::mem::swap(&mut a, &mut b);
            }
            let e = mesh.triangle_edges(t)[k];
            for &u in mesh.edge_triangles(e) {
                if u == t {
                    continue;
                }
                // u must traverse the shared edge as b -> a.
                let needed = if traverses(mesh.triangle(u), b, a) { 1 } else { -1 };
                match sign[u as usize] {
                    0 => {
                        sign[u as usize] = needed;
                        queue.push_back(u);
                    }
                    s if s != needed => return Ok(None),
                    _ => {}
                }
            }
        }
    }
    Ok(Some(
        mesh.triangles()
            .iter()
            .zip(&sign)
            .map(|(t, &s)| if s > 0 { *t } else { [t[0], t[2], t[1]] })
            .collect(),
    ))
}

fn traverses(tri: [u32; 3], a: u32, b: u32) -> bool {
    (0..3).any(|k| tri[k] == a && tri[(k + 1) % 3] == b)
}

/// Boundary edges partitioned into simple cycles.
///
/// Each cycle starts at its smallest vertex. Its direction follows the stored
/// orientation of the triangle owning the first boundary edge, so on a
/// consistently oriented surface every cycle is the induced boundary
/// orientation.
pub fn boundary_components(mesh: &SimplicialSurface) -> Vec<Vec<u32>> {
    let n = mesh.vertex_count();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    for e in 0..mesh.edge_count() as u32 {
        if mesh.is_boundary_edge(e) {
            let [a, b] = mesh.edge(e);
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
    }
    for (v, nb) in adj.iter().enumerate() {
        assert!(
            nb.is_empty() || nb.len() == 2,
            "boundary vertex {v} has {} boundary edges",
            nb.len()
        );
    }
    let directed_forward = |a: u32, b: u32| {
        let e = mesh.edge_id(a, b).expect("boundary edge exists");
        traverses(mesh.triangle(mesh.edge_triangles(e)[0]), a, b)
    };
    let mut visited = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n as u32 {
        if visited[start as usize] || adj[start as usize].is_empty() {
            continue;
        }
        let nb = &adj[start as usize];
        let mut next = if directed_forward(start, nb[0]) { nb[0] } else { nb[1] };
        let mut cycle = vec![start];
        visited[start as usize] = true;
        let mut prev = start;
        while next != start {
            assert!(!visited[next as usize], "boundary is not a disjoint union of simple cycles");
            visited[next as usize] = true;
            cycle.push(next);
            let nb = &adj[next as usize];
            let step = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = next;
            next = step;
        }
        cycles.push(cycle);
    }
    cycles
}

/// Classifies a connected surface.
pub fn signature(mesh: &SimplicialSurface) -> Result<SurfaceSignature, MeshError> {
    let orientation = orientability(mesh)?;
    let chi = euler_characteristic(mesh);
    let boundary = boundary_components(mesh).len() as i64;
    let orientable = orientation.is_some();
    let genus = if orientable {
        debug_assert_eq!((2 - chi - boundary) % 2, 0);
        (2 - chi - boundary) / 2
    } else {
        2 - chi - boundary
    };
    let sig = SurfaceSignature {
        orientable,
        genus: u32::try_from(genus).expect("classification yields a non-negative genus"),
        boundary_count: boundary as u32,
        euler_char: chi,
    };
    debug_assert!(sig.validate().is_ok());
    Ok(sig)
}
