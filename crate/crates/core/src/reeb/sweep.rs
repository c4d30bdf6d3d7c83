use super::clip::Side;
use super::graph::{ReebEdge, ReebGraph, ReebNode};
use super::level::{LevelSet, LevelShape};
use super::slab::Slab;
use super::Cell;
use crate::error::MeshError;
use crate::field::ScalarField;
use crate::mesh::{SimplicialSurface, SurfaceSignature};
use crate::rational::{self, Rational};

/// A level component in the uncontracted sweep graph.
#[derive(Debug, Clone)]
pub(crate) struct SweepNode {
    pub level: Rational,
    pub cells: Vec<Cell>,
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
    pub regular: bool,
}

/// Sweep graph layers. `vertex_layer[i]` tells whether layer `i` sits at a
/// vertex value (as opposed to a sample strictly inside a gap).
pub(crate) struct Layers {
    pub levels: Vec<Rational>,
    pub vertex_layer: Vec<bool>,
}

impl Layers {
    pub fn new(field: &ScalarField, samples_per_gap: usize) -> Self {
        let values = field.distinct_values();
        let mut levels = Vec::new();
        let mut vertex_layer = Vec::new();
        for (i, v) in values.iter().enumerate() {
            levels.push(v.clone());
            vertex_layer.push(true);
            if let Some(next) = values.get(i + 1) {
                let samples = if samples_per_gap == 1 {
                    vec![rational::midpoint(v, next)]
                } else {
                    rational::interior_samples(v, next, samples_per_gap)
                };
                for s in samples {
                    levels.push(s);
                    vertex_layer.push(false);
                }
            }
        }
        Self { levels, vertex_layer }
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }
}

/// Collar type a regular node must have, given the shapes of its two
/// neighbours at regular levels.
pub(crate) fn product_collar(lower: LevelShape, upper: LevelShape) -> Option<SurfaceSignature> {
    match (lower, upper) {
        (LevelShape::Cycle, LevelShape::Cycle) => Some(SurfaceSignature::annulus()),
        (LevelShape::Arc, LevelShape::Arc) => Some(SurfaceSignature::disk()),
        _ => None,
    }
}

/// Contracts every chain of regular nodes into a single edge. Surviving
/// nodes are ordered by (level, smallest cell), edges by endpoints and then
/// by smallest contracted cell.
pub(crate) fn contract(nodes: &[SweepNode]) -> ReebGraph {
    let mut critical: Vec<usize> = (0..nodes.len()).filter(|&i| !nodes[i].regular).collect();
    critical.sort_by(|&a, &b| (&nodes[a].level, nodes[a].cells.first()).cmp(&(&nodes[b].level, nodes[b].cells.first())));
    let mut new_id = vec![usize::MAX; nodes.len()];
    for (k, &i) in critical.iter().enumerate() {
        new_id[i] = k;
    }

    let mut edges: Vec<([usize; 2], Vec<Cell>)> = Vec::new();
    let mut contracted = 0usize;
    for &start in &critical {
        for &first in &nodes[start].upper {
            let mut cells = Vec::new();
            let mut prev = start;
            let mut cur = first;
            while nodes[cur].regular {
                assert!(nodes[cur].level > nodes[prev].level, "contracted chain is not monotone");
                assert_eq!(nodes[cur].lower, [prev], "regular node has a single lower neighbour");
                cells.extend_from_slice(&nodes[cur].cells);
                contracted += 1;
                prev = cur;
                cur = nodes[cur].upper[0];
            }
            assert!(nodes[cur].level > nodes[prev].level, "contracted chain is not monotone");
            cells.sort_unstable();
            cells.dedup();
            edges.push(([new_id[start], new_id[cur]], cells));
        }
    }
    assert_eq!(contracted + critical.len(), nodes.len(), "every regular node lies on one chain");
    edges.sort_by(|a, b| (a.0, a.1.first()).cmp(&(b.0, b.1.first())));

    let out_nodes: Vec<ReebNode> = critical
        .iter()
        .enumerate()
        .map(|(k, &i)| ReebNode { id: k, level: nodes[i].level.clone(), critical: true, cells: nodes[i].cells.clone() })
        .collect();
    let out_edges = edges
        .into_iter()
        .enumerate()
        .map(|(k, (ends, cells))| ReebEdge {
            id: k,
            ends,
            interval: [out_nodes[ends[0]].level.clone(), out_nodes[ends[1]].level.clone()],
            cells,
        })
        .collect();
    ReebGraph { nodes: out_nodes, edges: out_edges }
}

/// The full sweep before contraction.
pub(crate) fn sweep_nodes(mesh: &SimplicialSurface, field: &ScalarField) -> Vec<SweepNode> {
    let layers = Layers::new(field, 1);
    let level_sets: Vec<LevelSet> = layers.levels.iter().map(|t| LevelSet::compute(mesh, field, t)).collect();
    let mut offset = Vec::with_capacity(layers.len());
    let mut nodes: Vec<SweepNode> = Vec::new();
    for (ls, level) in level_sets.iter().zip(&layers.levels) {
        offset.push(nodes.len());
        nodes.extend(ls.components.iter().map(|c| SweepNode {
            level: level.clone(),
            cells: c.cells.clone(),
            lower: Vec::new(),
            upper: Vec::new(),
            regular: false,
        }));
    }

    for i in 0..layers.len().saturating_sub(1) {
        let slab = Slab::compute(mesh, field, &layers.levels[i], &layers.levels[i + 1], &level_sets[i], &level_sets[i + 1]);
        for comp in &slab.components {
            for &lo in &comp.lower {
                for &up in &comp.upper {
                    nodes[offset[i] + lo].upper.push(offset[i + 1] + up);
                    nodes[offset[i + 1] + up].lower.push(offset[i] + lo);
                }
            }
        }
    }
    for n in nodes.iter_mut() {
        n.lower.sort_unstable();
        n.upper.sort_unstable();
    }

    for i in 0..layers.len() {
        let candidates: Vec<usize> = (0..level_sets[i].components.len())
            .filter(|&c| {
                let n = &nodes[offset[i] + c];
                n.lower.len() == 1 && n.upper.len() == 1
            })
            .collect();
        if candidates.is_empty() {
            continue;
        }
        if !layers.vertex_layer[i] {
            for c in candidates {
                nodes[offset[i] + c].regular = true;
            }
            continue;
        }
        // A vertex layer with neighbours on both sides is never first or last.
        let collar = Slab::compute(
            mesh,
            field,
            &layers.levels[i - 1],
            &layers.levels[i + 1],
            &level_sets[i - 1],
            &level_sets[i + 1],
        );
        for c in candidates {
            let idx = offset[i] + c;
            let below = nodes[idx].lower[0] - offset[i - 1];
            let above = nodes[idx].upper[0] - offset[i + 1];
            let expected = product_collar(
                level_sets[i - 1].components[below].shape,
                level_sets[i + 1].components[above].shape,
            );
            let comp = collar
                .component_of(level_sets[i].anchors[c], Side::Lo)
                .expect("level component lies inside its collar");
            nodes[idx].regular = expected.is_some() && collar.components[comp].signature == expected;
        }
    }
    nodes
}

/// Reeb graph of a PL field.
///
/// Candidate critical values are all distinct vertex values; one sample is
/// taken at the midpoint of every gap. Nodes whose collar is a product are
/// contracted, so every surviving node is a critical level component.
pub fn compute_reeb_graph(mesh: &SimplicialSurface, field: &ScalarField) -> Result<ReebGraph, MeshError> {
    field.check_len(mesh.vertex_count())?;
    let graph = contract(&sweep_nodes(mesh, field));
    debug_assert_eq!(graph.check_invariants(), Ok(()));
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{grid_torus, octahedron, torus7};
    use crate::rational::from_int;

    #[test]
    fn octahedron_height_is_a_path() {
        let f = ScalarField::from_integers([0, 0, 0, 0, 1, -1]);
        let g = compute_reeb_graph(&octahedron(), &f).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.nodes[0].level, from_int(-1));
        assert_eq!(g.nodes[1].level, from_int(1));
        assert_eq!(g.edges[0].ends, [0, 1]);
    }

    #[test]
    fn constant_field_is_one_node() {
        for m in [octahedron(), torus7()] {
            let f = ScalarField::constant(m.vertex_count(), from_int(4));
            let g = compute_reeb_graph(&m, &f).unwrap();
            assert_eq!((g.node_count(), g.edge_count()), (1, 0));
        }
    }

    #[test]
    fn standing_torus() {
        let t = grid_torus(8, 6);
        let g = compute_reeb_graph(&t.mesh, &t.height).unwrap();
        let levels: Vec<_> = g.nodes.iter().map(|n| n.level.clone()).collect();
        assert_eq!(levels, vec![from_int(-3), from_int(-1), from_int(1), from_int(3)]);
        let ends: Vec<_> = g.edges.iter().map(|e| e.ends).collect();
        assert_eq!(ends, vec![[0, 1], [1, 2], [1, 2], [2, 3]]);
        assert_eq!(g.betti1(), 1);
    }

    #[test]
    fn wrong_field_length() {
        let f = ScalarField::from_integers([0, 1]);
        assert!(matches!(compute_reeb_graph(&octahedron(), &f), Err(MeshError::FieldLength { .. })));
    }

    #[test]
    fn empty_mesh_gives_empty_graph() {
        let m = SimplicialSurface::from_triangles(0, vec![]).unwrap();
        let g = compute_reeb_graph(&m, &ScalarField::new(vec![])).unwrap();
        assert_eq!(g, ReebGraph::default());
    }
}
