//! Independent reconstruction of the Reeb graph from several samples per gap.
//!
//! Shares only the chain contraction with the sweep. Level components come
//! from a breadth-first search over an explicit level graph, incidence from
//! triangles spanning both levels, and the collar test from compactly
//! supported Euler characteristics of open cells.

use std::collections::{BTreeMap, HashMap, VecDeque};

use petgraph::unionfind::UnionFind;

use super::graph::ReebGraph;
use super::level::{LevelComponent, LevelShape};
use super::sweep::{contract, Layers, SweepNode};
use super::Cell;
use crate::error::MeshError;
use crate::field::ScalarField;
use crate::mesh::SimplicialSurface;
use crate::rational::Rational;

/// Level points keyed as (is_edge, id) so that vertices sort first.
type Key = (bool, u32);

/// Level components via explicit path search on the level subcomplex.
pub fn level_components_by_path_search(
    mesh: &SimplicialSurface,
    field: &ScalarField,
    t: &Rational,
) -> Vec<LevelComponent> {
    let at = |v: u32| field.value(v) == t;
    let straddles = |e: u32| {
        let [a, b] = mesh.edge(e);
        let (fa, fb) = (field.value(a), field.value(b));
        (fa < t && t < fb) || (fb < t && t < fa)
    };

    let mut adjacency: BTreeMap<Key, Vec<Key>> = BTreeMap::new();
    for v in (0..mesh.vertex_count() as u32).filter(|&v| at(v)) {
        adjacency.insert((false, v), Vec::new());
    }
    for e in (0..mesh.edge_count() as u32).filter(|&e| straddles(e)) {
        adjacency.insert((true, e), Vec::new());
    }
    let mut touching: Vec<(u32, Key)> = Vec::new();
    let mut flat_triangles: Vec<Key> = Vec::new();
    for tri in 0..mesh.triangle_count() as u32 {
        let mut pts: Vec<Key> = mesh.triangle(tri).into_iter().filter(|&v| at(v)).map(|v| (false, v)).collect();
        pts.extend(mesh.triangle_edges(tri).into_iter().filter(|&e| straddles(e)).map(|e| (true, e)));
        if pts.is_empty() {
            continue;
        }
        touching.push((tri, pts[0]));
        if pts.len() == 3 {
            flat_triangles.push(pts[0]);
        }
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let (p, q) = (pts[i], pts[j]);
                if !adjacency[&p].contains(&q) {
                    adjacency.get_mut(&p).unwrap().push(q);
                    adjacency.get_mut(&q).unwrap().push(p);
                }
            }
        }
    }

    let mut comp_of: HashMap<Key, usize> = HashMap::new();
    let mut members: Vec<Vec<Key>> = Vec::new();
    for &start in adjacency.keys() {
        if comp_of.contains_key(&start) {
            continue;
        }
        let id = members.len();
        let mut queue = VecDeque::from([start]);
        comp_of.insert(start, id);
        let mut found = Vec::new();
        while let Some(p) = queue.pop_front() {
            found.push(p);
            for &q in &adjacency[&p] {
                if let std::collections::hash_map::Entry::Vacant(slot) = comp_of.entry(q) {
                    slot.insert(id);
                    queue.push_back(q);
                }
            }
        }
        members.push(found);
    }

    let mut cells: Vec<Vec<Cell>> = members
        .iter()
        .map(|m| m.iter().map(|&(is_edge, id)| if is_edge { Cell::Edge(id) } else { Cell::Vertex(id) }).collect())
        .collect();
    for (e, &[a, b]) in mesh.edges().iter().enumerate() {
        if at(a) && at(b) {
            cells[comp_of[&(false, a)]].push(Cell::Edge(e as u32));
        }
    }
    for &(tri, p) in &touching {
        cells[comp_of[&p]].push(Cell::Triangle(tri));
    }
    let mut faces = vec![0i64; members.len()];
    for p in &flat_triangles {
        faces[comp_of[p]] += 1;
    }

    let mut out: Vec<LevelComponent> = members
        .iter()
        .enumerate()
        .map(|(c, m)| {
            let degrees: Vec<u32> = m.iter().map(|p| adjacency[p].len() as u32).collect();
            let segments: i64 = degrees.iter().map(|&d| d as i64).sum::<i64>() / 2;
            let euler_char = m.len() as i64 - segments + faces[c];
            let touches_boundary = m.iter().any(|&(is_edge, id)| {
                if is_edge {
                    mesh.is_boundary_edge(id)
                } else {
                    mesh.vertex_edges(id).iter().any(|&e| mesh.is_boundary_edge(e))
                }
            });
            let shape = if faces[c] > 0 {
                LevelShape::Complex
            } else if segments == 0 {
                LevelShape::Point
            } else if degrees.iter().all(|&d| d == 2) {
                LevelShape::Cycle
            } else if euler_char == 1 && degrees.iter().filter(|&&d| d == 1).count() == 2 && degrees.iter().all(|&d| d <= 2) {
                LevelShape::Arc
            } else {
                LevelShape::Complex
            };
            let mut cs = std::mem::take(&mut cells[c]);
            cs.sort_unstable();
            LevelComponent { id: 0, level: t.clone(), cells: cs, euler_char, shape, touches_boundary }
        })
        .collect();
    out.sort_by(|a, b| a.cells[0].cmp(&b.cells[0]));
    for (i, c) in out.iter_mut().enumerate() {
        c.id = i;
    }
    out
}

/// Compactly supported Euler characteristic of each component of the open
/// slab `f⁻¹((a, b))`, keyed by cell.
struct OpenSlab {
    comp: HashMap<Cell, u32>,
    euler: HashMap<u32, i64>,
}

impl OpenSlab {
    fn compute(mesh: &SimplicialSurface, field: &ScalarField, a: &Rational, b: &Rational) -> Self {
        let inside = |lo: &Rational, hi: &Rational| {
            if lo == hi {
                a < lo && lo < b
            } else {
                lo < b && hi > a
            }
        };
        let nv = mesh.vertex_count() as u32;
        let ne = mesh.edge_count() as u32;
        let index = |c: Cell| match c {
            Cell::Vertex(v) => v,
            Cell::Edge(e) => nv + e,
            Cell::Triangle(t) => nv + ne + t,
        };
        let mut meets: HashMap<Cell, ()> = HashMap::new();
        for v in 0..nv {
            let f = field.value(v);
            if inside(f, f) {
                meets.insert(Cell::Vertex(v), ());
            }
        }
        for e in 0..ne {
            let [p, q] = mesh.edge(e);
            let (fp, fq) = (field.value(p), field.value(q));
            if inside(fp.min(fq), fp.max(fq)) {
                meets.insert(Cell::Edge(e), ());
            }
        }
        for t in 0..mesh.triangle_count() as u32 {
            let vals = mesh.triangle(t).map(|v| field.value(v));
            let lo = vals.iter().min().unwrap();
            let hi = vals.iter().max().unwrap();
            if inside(lo, hi) {
                meets.insert(Cell::Triangle(t), ());
            }
        }
        let total = nv + ne + mesh.triangle_count() as u32;
        let mut uf = UnionFind::<u32>::new(total as usize);
        for &cell in meets.keys() {
            match cell {
                Cell::Edge(e) => {
                    for v in mesh.edge(e) {
                        if meets.contains_key(&Cell::Vertex(v)) {
                            uf.union(index(cell), v);
                        }
                    }
                }
                Cell::Triangle(t) => {
                    for e in mesh.triangle_edges(t) {
                        if meets.contains_key(&Cell::Edge(e)) {
                            uf.union(index(cell), nv + e);
                        }
                    }
                }
                Cell::Vertex(_) => {}
            }
        }
        let mut comp = HashMap::new();
        let mut euler: HashMap<u32, i64> = HashMap::new();
        for &cell in meets.keys() {
            let root = uf.find(index(cell));
            comp.insert(cell, root);
            let sign = match cell {
                Cell::Vertex(_) | Cell::Triangle(_) => 1,
                Cell::Edge(_) => -1,
            };
            *euler.entry(root).or_default() += sign;
        }
        Self { comp, euler }
    }
}

/// Reeb graph rebuilt with `extra_samples` equally spaced samples in every gap
/// between consecutive vertex values.
pub fn sampled_reeb_oracle(
    mesh: &SimplicialSurface,
    field: &ScalarField,
    extra_samples: usize,
) -> Result<ReebGraph, MeshError> {
    field.check_len(mesh.vertex_count())?;
    if extra_samples == 0 {
        return Err(MeshError::InvalidSampleCount);
    }
    let layers = if extra_samples == 1 { Layers::new(field, 1) } else { Layers::new(field, extra_samples) };
    let levels: Vec<Vec<LevelComponent>> =
        layers.levels.iter().map(|t| level_components_by_path_search(mesh, field, t)).collect();
    let tri_maps: Vec<HashMap<u32, usize>> = levels
        .iter()
        .map(|comps| comps.iter().flat_map(|c| c.triangles().map(move |t| (t, c.id))).collect())
        .collect();

    let mut offset = Vec::new();
    let mut nodes: Vec<SweepNode> = Vec::new();
    for (comps, level) in levels.iter().zip(&layers.levels) {
        offset.push(nodes.len());
        nodes.extend(comps.iter().map(|c| SweepNode {
            level: level.clone(),
            cells: c.cells.clone(),
            lower: Vec::new(),
            upper: Vec::new(),
            regular: false,
        }));
    }

    for i in 0..layers.len().saturating_sub(1) {
        let (a, b) = (&layers.levels[i], &layers.levels[i + 1]);
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for t in 0..mesh.triangle_count() as u32 {
            let vals = mesh.triangle(t).map(|v| field.value(v));
            if *vals.iter().min().unwrap() <= a && *vals.iter().max().unwrap() >= b {
                pairs.push((tri_maps[i][&t], tri_maps[i + 1][&t]));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        for (x, y) in pairs {
            nodes[offset[i] + x].upper.push(offset[i + 1] + y);
            nodes[offset[i + 1] + y].lower.push(offset[i] + x);
        }
    }
    for n in nodes.iter_mut() {
        n.lower.sort_unstable();
        n.upper.sort_unstable();
    }

    for i in 0..layers.len() {
        let mut open: Option<OpenSlab> = None;
        for c in 0..levels[i].len() {
            let idx = offset[i] + c;
            if nodes[idx].lower.len() != 1 || nodes[idx].upper.len() != 1 {
                continue;
            }
            if !layers.vertex_layer[i] {
                nodes[idx].regular = true;
                continue;
            }
            let open = open.get_or_insert_with(|| {
                OpenSlab::compute(mesh, field, &layers.levels[i - 1], &layers.levels[i + 1])
            });
            let below = &levels[i - 1][nodes[idx].lower[0] - offset[i - 1]];
            let above = &levels[i + 1][nodes[idx].upper[0] - offset[i + 1]];
            let anchor = levels[i][c].cells[0];
            let root = open.comp[&anchor];
            // chi(closed collar) = chi_c(open collar) + chi(below) + chi(above)
            let closed = open.euler[&root] + below.euler_char + above.euler_char;
            let level_curves = matches!(below.shape, LevelShape::Cycle | LevelShape::Arc);
            nodes[idx].regular = level_curves && below.euler_char == above.euler_char && closed == below.euler_char;
        }
    }
    let graph = contract(&nodes);
    debug_assert_eq!(graph.check_invariants(), Ok(()));
    Ok(graph)
}
