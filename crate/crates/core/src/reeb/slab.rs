use std::collections::HashMap;

use petgraph::unionfind::UnionFind;

use super::clip::{clip_triangle, value_range, Point, Side};
use super::level::LevelSet;
use super::Cell;
use crate::error::MeshError;
use crate::field::ScalarField;
use crate::mesh::{signature, SimplicialSurface, SurfaceSignature, TriangleSoup};
use crate::rational::{self, Rational};

/// One connected component of `f⁻¹([a, b])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalComponent {
    pub id: usize,
    /// Mesh cells meeting this component.
    pub cells: Vec<Cell>,
    /// Euler characteristic of the exact preimage (not of `cells`).
    pub euler_char: i64,
    /// Classification of the preimage, or `None` when it is not a 2-manifold
    /// (pinched at a vertex, or containing dangling lower-dimensional pieces).
    pub signature: Option<SurfaceSignature>,
    /// Indices into `level_components(a)` of the components contained here.
    pub lower: Vec<usize>,
    /// Indices into `level_components(b)` of the components contained here.
    pub upper: Vec<usize>,
}

/// The preimage of a closed interval as an explicit polygonal complex: each
/// triangle clipped to the slab, glued along shared points.
pub(crate) struct Slab {
    pub components: Vec<IntervalComponent>,
    point_comp: HashMap<Point, usize>,
    degenerate: bool,
}

impl Slab {
    pub fn compute(
        mesh: &SimplicialSurface,
        field: &ScalarField,
        a: &Rational,
        b: &Rational,
        lower: &LevelSet,
        upper: &LevelSet,
    ) -> Self {
        debug_assert!(a <= b);
        let degenerate = a == b;
        let mut points: Vec<Point> = Vec::new();
        let mut point_id: HashMap<Point, u32> = HashMap::new();
        let mut intern = |p: Point, points: &mut Vec<Point>| -> u32 {
            *point_id.entry(p).or_insert_with(|| {
                points.push(p);
                points.len() as u32 - 1
            })
        };
        // (triangle, outline as point ids)
        let mut outlines: Vec<(u32, Vec<u32>)> = Vec::new();
        for t in 0..mesh.triangle_count() as u32 {
            let (lo, hi) = value_range(mesh, field, t);
            if lo > *b || hi < *a {
                continue;
            }
            let outline = clip_triangle(mesh, field, t, a, b)
                .into_iter()
                .map(|p| intern(p, &mut points))
                .collect();
            outlines.push((t, outline));
        }

        // segment -> number of polygons using it
        let mut segments: HashMap<(u32, u32), u32> = HashMap::new();
        let mut uf = UnionFind::<u32>::new(points.len());
        for (_, outline) in &outlines {
            let k = outline.len();
            for j in 0..k {
                uf.union(outline[0], outline[j]);
            }
            if k == 2 {
                let (p, q) = (outline[0], outline[1]);
                segments.entry((p.min(q), p.max(q))).or_insert(0);
            } else if k >= 3 {
                for j in 0..k {
                    let (p, q) = (outline[j], outline[(j + 1) % k]);
                    *segments.entry((p.min(q), p.max(q))).or_insert(0) += 1;
                }
            }
        }

        let mut cells_by_root: HashMap<u32, Vec<Cell>> = HashMap::new();
        let mut push = |root: u32, cell: Cell| cells_by_root.entry(root).or_default().push(cell);
        for v in 0..mesh.vertex_count() as u32 {
            if let Some(&p) = point_id.get(&Point::Vertex(v)) {
                push(uf.find(p), Cell::Vertex(v));
            }
        }
        for (e, &[u, w]) in mesh.edges().iter().enumerate() {
            let e = e as u32;
            let first = [Point::Vertex(u), Point::Vertex(w), Point::Cross(e, Side::Lo), Point::Cross(e, Side::Hi)]
                .into_iter()
                .find_map(|p| point_id.get(&p));
            if let Some(&p) = first {
                push(uf.find(p), Cell::Edge(e));
            }
        }
        for (t, outline) in &outlines {
            push(uf.find(outline[0]), Cell::Triangle(*t));
        }
        let mut roots: Vec<(u32, Vec<Cell>)> = cells_by_root
            .into_iter()
            .map(|(r, mut cells)| {
                cells.sort_unstable();
                (r, cells)
            })
            .collect();
        roots.sort_by(|x, y| x.1[0].cmp(&y.1[0]));
        let slot: HashMap<u32, usize> = roots.iter().enumerate().map(|(i, (r, _))| (*r, i)).collect();
        let k = roots.len();

        let mut comp_points: Vec<Vec<u32>> = vec![Vec::new(); k];
        for p in 0..points.len() as u32 {
            comp_points[slot[&uf.find(p)]].push(p);
        }
        let mut comp_faces: Vec<Vec<&Vec<u32>>> = vec![Vec::new(); k];
        for (_, outline) in &outlines {
            if outline.len() >= 3 {
                comp_faces[slot[&uf.find(outline[0])]].push(outline);
            }
        }
        let mut comp_segments = vec![0i64; k];
        let mut manifold = vec![true; k];
        let mut covered = vec![false; points.len()];
        for faces in &comp_faces {
            for outline in faces {
                outline.iter().for_each(|&p| covered[p as usize] = true);
            }
        }
        for (&(p, _), &uses) in &segments {
            let c = slot[&uf.find(p)];
            comp_segments[c] += 1;
            if uses == 0 || uses > 2 {
                manifold[c] = false;
            }
        }
        for (p, &cov) in covered.iter().enumerate() {
            if !cov {
                manifold[slot[&uf.find(p as u32)]] = false;
            }
        }

        let mut components: Vec<IntervalComponent> = roots
            .into_iter()
            .enumerate()
            .map(|(c, (_, cells))| {
                let euler_char =
                    comp_points[c].len() as i64 - comp_segments[c] + comp_faces[c].len() as i64;
                let signature = if manifold[c] {
                    classify_faces(&comp_points[c], &comp_faces[c])
                } else {
                    None
                };
                if let Some(sig) = signature {
                    debug_assert_eq!(sig.euler_char, euler_char);
                }
                IntervalComponent { id: c, cells, euler_char, signature, lower: Vec::new(), upper: Vec::new() }
            })
            .collect();

        let point_comp: HashMap<Point, usize> =
            point_id.iter().map(|(p, &id)| (*p, slot[&uf.find(id)])).collect();
        let mut slab = Self { components: Vec::new(), point_comp, degenerate };
        for (i, anchor) in lower.anchors.iter().enumerate() {
            let c = slab.component_of(*anchor, Side::Lo).expect("lower level lies in the slab");
            components[c].lower.push(i);
        }
        for (i, anchor) in upper.anchors.iter().enumerate() {
            let c = slab.component_of(*anchor, Side::Hi).expect("upper level lies in the slab");
            components[c].upper.push(i);
        }
        slab.components = components;
        slab
    }

    /// Component containing a level-set anchor. A crossed edge anchor is
    /// looked up at the requested slab side.
    pub fn component_of(&self, anchor: Point, side: Side) -> Option<usize> {
        let key = match anchor {
            Point::Vertex(v) => Point::Vertex(v),
            Point::Cross(e, _) if self.degenerate => Point::Cross(e, Side::Lo),
            Point::Cross(e, _) => Point::Cross(e, side),
        };
        self.point_comp.get(&key).copied()
    }
}

/// Fan-triangulates the convex polygons of one component and classifies the
/// result; `None` when it is not a surface.
fn classify_faces(points: &[u32], faces: &[&Vec<u32>]) -> Option<SurfaceSignature> {
    if faces.is_empty() {
        return None;
    }
    let local: HashMap<u32, u32> = points.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
    let mut triangles = Vec::new();
    for outline in faces {
        let ids: Vec<u32> = outline.iter().map(|p| local[p]).collect();
        for j in 1..ids.len() - 1 {
            triangles.push([ids[0], ids[j], ids[j + 1]]);
        }
    }
    let surface = SimplicialSurface::new(TriangleSoup::from_triangles(points.len(), triangles)).ok()?;
    signature(&surface).ok()
}

/// Components of `f⁻¹([a, b])`, each with its classification and the level
/// components of `f⁻¹(a)` and `f⁻¹(b)` it contains.
pub fn interval_components(
    mesh: &SimplicialSurface,
    field: &ScalarField,
    a: &Rational,
    b: &Rational,
) -> Result<Vec<IntervalComponent>, MeshError> {
    if a > b {
        return Err(MeshError::InvalidInterval { lo: rational::format(a), hi: rational::format(b) });
    }
    field.check_len(mesh.vertex_count())?;
    let lower = LevelSet::compute(mesh, field, a);
    let upper = if a == b { lower.clone() } else { LevelSet::compute(mesh, field, b) };
    Ok(Slab::compute(mesh, field, a, b, &lower, &upper).components)
}
