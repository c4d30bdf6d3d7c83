use std::collections::{HashMap, HashSet};

use petgraph::unionfind::UnionFind;

use super::clip::{clip_triangle, value_range, Point, Side};
use super::Cell;
use crate::field::ScalarField;
use crate::mesh::SimplicialSurface;
use crate::rational::Rational;

/// Topological type of a level component, read off its 1-skeleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelShape {
    /// An isolated vertex at the level.
    Point,
    /// A simple arc; only occurs on surfaces with boundary.
    Arc,
    /// A simple closed curve.
    Cycle,
    /// Anything else: branching graphs, or pieces containing flat triangles.
    Complex,
}

/// One connected component of `f⁻¹(t)`.
///
/// `cells` lists the vertices at level `t`, the edges crossed by or contained
/// in the level, and every triangle meeting it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelComponent {
    pub id: usize,
    pub level: Rational,
    pub cells: Vec<Cell>,
    pub euler_char: i64,
    pub shape: LevelShape,
    pub touches_boundary: bool,
}

impl LevelComponent {
    pub fn triangles(&self) -> impl Iterator<Item = u32> + '_ {
        self.cells.iter().filter_map(|c| match c {
            Cell::Triangle(t) => Some(*t),
            _ => None,
        })
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.cells.iter().filter_map(|c| match c {
            Cell::Vertex(v) => Some(*v),
            _ => None,
        })
    }
}

/// Level components plus lookup tables used by the sweep.
#[derive(Debug, Clone)]
pub(crate) struct LevelSet {
    pub components: Vec<LevelComponent>,
    /// A point of each component: a vertex at the level or a crossed edge.
    pub anchors: Vec<Point>,
}

impl LevelSet {
    pub fn compute(mesh: &SimplicialSurface, field: &ScalarField, t: &Rational) -> Self {
        let mut elements: Vec<Point> = Vec::new();
        let mut index: HashMap<Point, u32> = HashMap::new();
        for v in 0..mesh.vertex_count() as u32 {
            if field.value(v) == t {
                index.insert(Point::Vertex(v), elements.len() as u32);
                elements.push(Point::Vertex(v));
            }
        }
        for (e, &[a, b]) in mesh.edges().iter().enumerate() {
            let (fa, fb) = (field.value(a), field.value(b));
            if (fa < t && t < fb) || (fb < t && t < fa) {
                let p = Point::Cross(e as u32, Side::Lo);
                index.insert(p, elements.len() as u32);
                elements.push(p);
            }
        }
        if elements.is_empty() {
            return Self { components: Vec::new(), anchors: Vec::new() };
        }

        let mut uf = UnionFind::<u32>::new(elements.len());
        let mut pieces: Vec<(u32, Vec<u32>)> = Vec::new();
        for tri in 0..mesh.triangle_count() as u32 {
            let (lo, hi) = value_range(mesh, field, tri);
            if lo > *t || hi < *t {
                continue;
            }
            let piece: Vec<u32> =
                clip_triangle(mesh, field, tri, t, t).iter().map(|p| index[p]).collect();
            for &q in &piece[1..] {
                uf.union(piece[0], q);
            }
            pieces.push((tri, piece));
        }

        // Group by root, then order components by their smallest cell.
        let mut cells_by_root: HashMap<u32, Vec<Cell>> = HashMap::new();
        for (i, p) in elements.iter().enumerate() {
            let cell = match *p {
                Point::Vertex(v) => Cell::Vertex(v),
                Point::Cross(e, _) => Cell::Edge(e),
            };
            cells_by_root.entry(uf.find(i as u32)).or_default().push(cell);
        }
        for (e, &[a, b]) in mesh.edges().iter().enumerate() {
            if field.value(a) == t && field.value(b) == t {
                let root = uf.find(index[&Point::Vertex(a)]);
                cells_by_root.get_mut(&root).unwrap().push(Cell::Edge(e as u32));
            }
        }
        for (tri, piece) in &pieces {
            cells_by_root.get_mut(&uf.find(piece[0])).unwrap().push(Cell::Triangle(*tri));
        }
        let mut roots: Vec<(u32, Vec<Cell>)> = cells_by_root
            .into_iter()
            .map(|(r, mut cells)| {
                cells.sort_unstable();
                (r, cells)
            })
            .collect();
        roots.sort_by(|a, b| a.1[0].cmp(&b.1[0]));
        let slot: HashMap<u32, usize> = roots.iter().enumerate().map(|(i, (r, _))| (*r, i)).collect();

        // Euler characteristic and degrees of the level graph.
        let k = roots.len();
        let mut points = vec![0i64; k];
        let mut faces = vec![0i64; k];
        let mut touches_boundary = vec![false; k];
        let mut segments: HashSet<(u32, u32)> = HashSet::new();
        for (i, p) in elements.iter().enumerate() {
            let c = slot[&uf.find(i as u32)];
            points[c] += 1;
            let on_boundary = match *p {
                Point::Vertex(v) => mesh.vertex_edges(v).iter().any(|&e| mesh.is_boundary_edge(e)),
                Point::Cross(e, _) => mesh.is_boundary_edge(e),
            };
            touches_boundary[c] |= on_boundary;
        }
        for (_, piece) in &pieces {
            if piece.len() >= 3 {
                faces[slot[&uf.find(piece[0])]] += 1;
            }
            if piece.len() >= 2 {
                for j in 0..piece.len() {
                    let (a, b) = (piece[j], piece[(j + 1) % piece.len()]);
                    if piece.len() == 2 && j == 1 {
                        break;
                    }
                    segments.insert((a.min(b), a.max(b)));
                }
            }
        }
        let mut seg_count = vec![0i64; k];
        let mut degree = vec![0u32; elements.len()];
        for &(a, b) in &segments {
            seg_count[slot[&uf.find(a)]] += 1;
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let mut degrees_by_comp: Vec<Vec<u32>> = vec![Vec::new(); k];
        for (i, &d) in degree.iter().enumerate() {
            degrees_by_comp[slot[&uf.find(i as u32)]].push(d);
        }

        let mut anchors = vec![None; k];
        for (i, p) in elements.iter().enumerate() {
            let c = slot[&uf.find(i as u32)];
            if anchors[c].is_none() {
                anchors[c] = Some(*p);
            }
        }

        let components = roots
            .into_iter()
            .enumerate()
            .map(|(c, (_, cells))| {
                let euler_char = points[c] - seg_count[c] + faces[c];
                let degs = &degrees_by_comp[c];
                let shape = if faces[c] > 0 {
                    LevelShape::Complex
                } else if seg_count[c] == 0 {
                    LevelShape::Point
                } else if degs.iter().all(|&d| d == 2) {
                    LevelShape::Cycle
                } else if euler_char == 1
                    && degs.iter().filter(|&&d| d == 1).count() == 2
                    && degs.iter().all(|&d| d == 1 || d == 2)
                {
                    LevelShape::Arc
                } else {
                    LevelShape::Complex
                };
                LevelComponent {
                    id: c,
                    level: t.clone(),
                    cells,
                    euler_char,
                    shape,
                    touches_boundary: touches_boundary[c],
                }
            })
            .collect();
        Self { components, anchors: anchors.into_iter().map(Option::unwrap).collect() }
    }
}

/// Connected components of the PL level set `f⁻¹(t)`.
///
/// Seeds are vertices with value exactly `t` and edges whose endpoint values
/// strictly straddle `t`; seeds on the boundary of a common triangle are
/// joined, so flat clusters at value `t` enter whole. Components are ordered
/// by smallest cell. Empty when `t` is outside the field's range.
pub fn level_components(mesh: &SimplicialSurface, field: &ScalarField, t: &Rational) -> Vec<LevelComponent> {
    LevelSet::compute(mesh, field, t).components
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{annulus, grid_torus, octahedron};
    use crate::rational::{from_int, parse};

    fn z_field() -> ScalarField {
        ScalarField::from_integers([0, 0, 0, 0, 1, -1])
    }

    #[test]
    fn octahedron_equator() {
        let comps = level_components(&octahedron(), &z_field(), &from_int(0));
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].shape, LevelShape::Cycle);
        assert_eq!(comps[0].vertices().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert_eq!(comps[0].triangles().count(), 8);
        assert_eq!(comps[0].euler_char, 0);
    }

    #[test]
    fn outside_range_is_empty() {
        assert!(level_components(&octahedron(), &z_field(), &from_int(2)).is_empty());
    }

    #[test]
    fn regular_level_crosses_edges_only() {
        let comps = level_components(&octahedron(), &z_field(), &parse("1/2").unwrap());
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].shape, LevelShape::Cycle);
        assert_eq!(comps[0].vertices().count(), 0);
        let pole = level_components(&octahedron(), &z_field(), &from_int(1));
        assert_eq!(pole[0].shape, LevelShape::Point);
    }

    #[test]
    fn torus_between_saddles_has_two_circles() {
        let t = grid_torus(8, 6);
        // Saddles of the standing torus sit at heights ±1.
        let comps = level_components(&t.mesh, &t.height, &parse("1/2").unwrap());
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.shape == LevelShape::Cycle));
    }

    #[test]
    fn constant_field_is_one_flat_component() {
        let f = ScalarField::constant(6, from_int(0));
        let comps = level_components(&octahedron(), &f, &from_int(0));
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].shape, LevelShape::Complex);
        assert_eq!(comps[0].euler_char, 2);
    }

    #[test]
    fn arcs_on_surfaces_with_boundary() {
        // Outer ring 0..4 at height = x rank, inner ring likewise.
        let m = annulus(4);
        let f = ScalarField::from_integers([0, 2, 4, 2, 1, 3, 5, 3]);
        let comps = level_components(&m, &f, &parse("1/2").unwrap());
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].shape, LevelShape::Arc);
        assert!(comps[0].touches_boundary);
        let two = level_components(&m, &f, &parse("5/2").unwrap());
        assert_eq!(two.len(), 2);
    }
}
