//! Deterministic corpora shared by the benchmarks and the acceptance suite.

use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reeb_core::mesh::{grid_torus, octahedron, subdivide};
use reeb_core::realize::{build_vertex_block, DecoratedGraph};
use reeb_core::{Multigraph, Rational, ScalarField, SimplicialSurface, SurfaceSignature};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Closed orientable genus-2 surface.
pub fn genus_two() -> SimplicialSurface {
    build_vertex_block(SurfaceSignature::orientable(2, 0), 3).expect("valid signature").mesh
}

/// The fixed surfaces random fields are drawn on.
pub fn surfaces() -> Vec<(&'static str, SimplicialSurface)> {
    vec![
        ("octahedron", octahedron()),
        ("subdivided sphere", subdivide(&subdivide(&octahedron()))),
        ("torus", grid_torus(8, 6).mesh),
        ("genus 2", genus_two()),
    ]
}

/// Small random rationals, with a few connected patches flattened to a
/// shared value so plateaus of every size show up.
pub fn random_field(mesh: &SimplicialSurface, rng: &mut impl Rng) -> ScalarField {
    let n = mesh.vertex_count();
    let mut values: Vec<Rational> = (0..n)
        .map(|_| Rational::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=3).into()))
        .collect();
    for _ in 0..rng.gen_range(0..=3) {
        let seed = rng.gen_range(0..n) as u32;
        let size = rng.gen_range(2..=n.min(12));
        let value = values[seed as usize].clone();
        let mut seen = HashSet::from([seed]);
        let mut queue = VecDeque::from([seed]);
        while let Some(v) = queue.pop_front() {
            values[v as usize] = value.clone();
            if seen.len() >= size {
                continue;
            }
            let mut next: Vec<u32> = mesh
                .vertex_edges(v)
                .iter()
                .map(|&e| {
                    let [a, b] = mesh.edge(e);
                    if a == v {
                        b
                    } else {
                        a
                    }
                })
                .collect();
            next.shuffle(rng);
            for u in next {
                if seen.len() < size && seen.insert(u) {
                    queue.push_back(u);
                }
            }
        }
    }
    ScalarField::new(values)
}

/// Every connected loop-free multigraph with at most `max_nodes` nodes and
/// `max_edges` edges, one per isomorphism class.
pub fn connected_multigraphs(max_nodes: usize, max_edges: usize) -> Vec<Multigraph> {
    let mut out = Vec::new();
    for n in 1..=max_nodes {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let perms = permutations(n);
        let mut seen = HashSet::new();
        for m in n - 1..=max_edges {
            let mut chosen = Vec::with_capacity(m);
            multisets(&pairs, m, 0, &mut chosen, &mut |edges| {
                let g = Multigraph::new(n, edges.to_vec());
                if g.component_count() != 1 {
                    return;
                }
                let canonical = perms
                    .iter()
                    .map(|p| {
                        let mut e: Vec<(usize, usize)> =
                            edges.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
                        e.sort_unstable();
                        e
                    })
                    .min()
                    .unwrap();
                if seen.insert(canonical) {
                    out.push(g);
                }
            });
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn multisets<T: Copy>(items: &[T], k: usize, from: usize, chosen: &mut Vec<T>, f: &mut impl FnMut(&[T])) {
    if chosen.len() == k {
        f(chosen);
        return;
    }
    for i in from..items.len() {
        chosen.push(items[i]);
        multisets(items, k, i, chosen, f);
        chosen.pop();
    }
}

/// A random decoration of a random corpus graph: vertex surfaces get extra
/// handles or crosscaps, and heights are sometimes shuffled.
pub fn random_decoration(graphs: &[Multigraph], rng: &mut impl Rng) -> DecoratedGraph {
    let g = &graphs[rng.gen_range(0..graphs.len())];
    let mut dg = DecoratedGraph::planar(g);
    for v in dg.vertices.iter_mut() {
        let boundary = v.gamma.boundary_count;
        v.gamma = match rng.gen_range(0..4) {
            0 => SurfaceSignature::orientable(rng.gen_range(1..=2), boundary),
            1 => SurfaceSignature::non_orientable(rng.gen_range(1..=2), boundary),
            _ => v.gamma,
        };
    }
    if rng.gen_bool(0.5) {
        let mut heights: Vec<i64> = (0..dg.vertices.len() as i64).map(|h| 2 * h - 3).collect();
        heights.shuffle(rng);
        for (v, h) in dg.vertices.iter_mut().zip(heights) {
            v.height = Some(h);
        }
    }
    dg
}
