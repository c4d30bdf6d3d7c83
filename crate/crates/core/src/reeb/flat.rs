use petgraph::unionfind::UnionFind;

use crate::field::ScalarField;
use crate::mesh::SimplicialSurface;

/// Maximal sets of vertices joined by mesh paths of constant field value.
///
/// Clusters are sorted internally and listed by smallest vertex.
pub fn flat_clusters(mesh: &SimplicialSurface, field: &ScalarField) -> Vec<Vec<u32>> {
    let n = mesh.vertex_count();
    let mut uf = UnionFind::<u32>::new(n);
    for &[a, b] in mesh.edges() {
        if field.value(a) == field.value(b) {
            uf.union(a, b);
        }
    }
    let mut slot = vec![usize::MAX; n];
    let mut clusters: Vec<Vec<u32>> = Vec::new();
    for v in 0..n as u32 {
        let r = uf.find(v) as usize;
        if slot[r] == usize::MAX {
            slot[r] = clusters.len();
            clusters.push(Vec::new());
        }
        clusters[slot[r]].push(v);
    }
    clusters
}
