//! Small standard triangulations used as fixtures and as building stock for
//! realizations.

use std::f64::consts::TAU;

use super::surface::{SimplicialSurface, TriangleSoup};
use crate::field::ScalarField;
use crate::rational::Rational;

fn make(positions: Vec<[f64; 3]>, triangles: Vec<[u32; 3]>) -> SimplicialSurface {
    SimplicialSurface::new(TriangleSoup::new(positions, triangles)).expect("fixture is a valid surface")
}

/// Octahedron with vertices at ±e_x, ±e_y, ±e_z; vertex 4 is the north pole
/// (+z) and vertex 5 the south pole.
pub fn octahedron() -> SimplicialSurface {
    let positions = vec![
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    let mut triangles = Vec::new();
    for i in 0..4u32 {
        let j = (i + 1) % 4;
        triangles.push([i, j, 4]);
        triangles.push([j, i, 5]);
    }
    make(positions, triangles)
}

pub fn single_triangle() -> SimplicialSurface {
    make(vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], vec![[0, 1, 2]])
}

/// Five triangles `{i, i+1, i+2}` mod 5; the edges `{i, i+1}` form the
/// interior core cycle.
pub fn standard_mobius_strip() -> SimplicialSurface {
    let triangles = (0..5u32).map(|i| [i, (i + 1) % 5, (i + 2) % 5]).collect();
    let positions = (0..5)
        .map(|i| {
            let a = TAU * i as f64 / 5.0;
            [a.cos(), a.sin(), 0.0]
        })
        .collect();
    make(positions, triangles)
}

/// Two concentric `n`-gon rings joined by `2n` triangles. Outer ring is
/// `0..n`, inner ring `n..2n`.
pub fn annulus(n: u32) -> SimplicialSurface {
    assert!(n >= 3);
    let mut positions = Vec::new();
    for r in [2.0, 1.0] {
        for i in 0..n {
            let a = TAU * i as f64 / n as f64;
            positions.push([r * a.cos(), r * a.sin(), 0.0]);
        }
    }
    let mut triangles = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        triangles.push([i, j, n + i]);
        triangles.push([j, n + j, n + i]);
    }
    make(positions, triangles)
}

/// Once-subdivided octahedron with three pairwise vertex-disjoint triangles
/// removed.
pub fn pair_of_pants() -> SimplicialSurface {
    let sphere = subdivide(&octahedron());
    let mut used = vec![false; sphere.vertex_count()];
    let mut removed = Vec::new();
    for (ti, t) in sphere.triangles().iter().enumerate() {
        if removed.len() == 3 {
            break;
        }
        if t.iter().all(|&v| !used[v as usize]) {
            t.iter().for_each(|&v| used[v as usize] = true);
            removed.push(ti);
        }
    }
    assert_eq!(removed.len(), 3);
    let triangles = sphere
        .triangles()
        .iter()
        .enumerate()
        .filter(|(i, _)| !removed.contains(i))
        .map(|(_, t)| *t)
        .collect();
    make(sphere.positions().to_vec(), triangles)
}

/// Minimal 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus7() -> SimplicialSurface {
    let mut triangles = Vec::new();
    for i in 0..7u32 {
        triangles.push([i, (i + 1) % 7, (i + 3) % 7]);
        triangles.push([i, (i + 3) % 7, (i + 2) % 7]);
    }
    let positions = (0..7)
        .map(|i| {
            let a = TAU * i as f64 / 7.0;
            [a.cos(), a.sin(), 0.0]
        })
        .collect();
    make(positions, triangles)
}

/// Minimal 6-vertex real projective plane (half of the icosahedron).
pub fn projective_plane() -> SimplicialSurface {
    let triangles = vec![
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 4, 2],
        [2, 5, 3],
        [3, 1, 4],
        [4, 2, 5],
        [5, 3, 1],
    ];
    let mut positions = vec![[0.0, 0.0, 1.0]];
    positions.extend((0..5).map(|i| {
        let a = TAU * i as f64 / 5.0;
        [a.cos(), a.sin(), 0.0]
    }));
    make(positions, triangles)
}

/// One 1→4 subdivision. The vertex inserted on edge `e` gets id
/// `vertex_count + e`.
pub fn subdivide(mesh: &SimplicialSurface) -> SimplicialSurface {
    let n = mesh.vertex_count() as u32;
    let mut positions = mesh.positions().to_vec();
    for &[a, b] in mesh.edges() {
        let (pa, pb) = (mesh.positions()[a as usize], mesh.positions()[b as usize]);
        positions.push([(pa[0] + pb[0]) / 2.0, (pa[1] + pb[1]) / 2.0, (pa[2] + pb[2]) / 2.0]);
    }
    let mut triangles = Vec::with_capacity(mesh.triangle_count() * 4);
    for t in 0..mesh.triangle_count() as u32 {
        let [a, b, c] = mesh.triangle(t);
        let [ab, bc, ca] = mesh.triangle_edges(t).map(|e| n + e);
        triangles.push([a, ab, ca]);
        triangles.push([ab, b, bc]);
        triangles.push([ca, bc, c]);
        triangles.push([ab, bc, ca]);
    }
    make(positions, triangles)
}

/// A `rows × cols` grid torus standing on its side, with the height field of
/// that embedding rounded to exact thousandths.
///
/// Row `i` sits at angle `2πi/rows` around the central circle (row 0 at the
/// waist height, row `rows/4` at the top), column `j` at angle `2πj/cols`
/// around the tube (column 0 on the outside).
#[derive(Debug, Clone)]
pub struct GridTorus {
    pub mesh: SimplicialSurface,
    pub height: ScalarField,
}

pub fn grid_torus(rows: u32, cols: u32) -> GridTorus {
    assert!(rows >= 3 && cols >= 3);
    let (big, small) = (2.0, 1.0);
    let mut positions = Vec::new();
    let mut height = Vec::new();
    for i in 0..rows {
        let theta = TAU * i as f64 / rows as f64;
        for j in 0..cols {
            let phi = TAU * j as f64 / cols as f64;
            let radial = big + small * phi.cos();
            let p = [radial * theta.cos(), small * phi.sin(), radial * theta.sin()];
            height.push(Rational::new(((p[2] * 1000.0).round() as i64).into(), 1000.into()));
            positions.push(p);
        }
    }
    let id = |i: u32, j: u32| (i % rows) * cols + (j % cols);
    let mut triangles = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            triangles.push([a, b, c]);
            triangles.push([a, c, d]);
        }
    }
    GridTorus { mesh: make(positions, triangles), height: ScalarField::new(height) }
}
