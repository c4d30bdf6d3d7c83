//! Building stock: vertex blocks with p-gon boundaries and edge tubes.

use crate::error::RealizeError;
use crate::field::ScalarField;
use crate::mesh::{octahedron, orientability, projective_plane, subdivide, torus7, SimplicialSurface, SurfaceSignature};
use crate::rational::{from_int, Rational};

/// Triangles of an annular band between cycles `b` and `r`.
///
/// The band traverses every edge of `b` backwards and every edge of `r`
/// forwards, so it continues the orientation of a surface whose induced
/// boundary is `b`, and leaves `r` reversed for the next piece.
pub(crate) fn band(b: &[u32], r: &[u32]) -> Vec<[u32; 3]> {
    let (m, n) = (b.len(), r.len());
    let mut out = Vec::with_capacity(m + n);
    let (mut i, mut j) = (0usize, 0usize);
    while i < m || j < n {
        if i < m && (j == n || i * n <= j * m) {
            out.push([b[(i + 1) % m], b[i], r[j % n]]);
            i += 1;
        } else {
            out.push([b[i % m], r[j], r[(j + 1) % n]]);
            j += 1;
        }
    }
    out
}

/// Induced boundary of a closed surface after deleting triangle `t`.
fn rim(t: [u32; 3]) -> [u32; 3] {
    [t[0], t[2], t[1]]
}

/// Oriented triangles of a closed piece (stored order if non-orientable).
fn oriented(mesh: &SimplicialSurface) -> Vec<[u32; 3]> {
    orientability(mesh)
        .expect("pieces are connected")
        .unwrap_or_else(|| mesh.triangles().to_vec())
}

/// Connected sum: the last triangle of `acc` and the first of `piece` are
/// removed and their rims joined by a band.
fn connect_sum(acc: (usize, Vec<[u32; 3]>), piece: &SimplicialSurface) -> (usize, Vec<[u32; 3]>) {
    let (n, mut tris) = acc;
    let removed = tris.pop().expect("closed surface has triangles");
    let mut other: Vec<[u32; 3]> = oriented(piece)
        .into_iter()
        .map(|t| t.map(|v| v + n as u32))
        .collect();
    let first = other.remove(0);
    tris.extend(other);
    tris.extend(band(&rim(removed), &first));
    (n + piece.vertex_count(), tris)
}

fn closed_surface(orientable: bool, genus: u32) -> SimplicialSurface {
    if genus == 0 {
        return octahedron();
    }
    let piece = if orientable { torus7() } else { projective_plane() };
    let mut acc = (piece.vertex_count(), oriented(&piece));
    for _ in 1..genus {
        acc = connect_sum(acc, &piece);
    }
    SimplicialSurface::from_triangles(acc.0, acc.1).expect("connected sum is a surface")
}

/// Greedy set of pairwise vertex-disjoint triangles.
fn disjoint_triangles(mesh: &SimplicialSurface, wanted: usize) -> Option<Vec<u32>> {
    let mut used = vec![false; mesh.vertex_count()];
    let mut picked = Vec::new();
    for t in 0..mesh.triangle_count() as u32 {
        if picked.len() == wanted {
            break;
        }
        let tri = mesh.triangle(t);
        if tri.iter().all(|&v| !used[v as usize]) {
            tri.iter().for_each(|&v| used[v as usize] = true);
            picked.push(t);
        }
    }
    (picked.len() == wanted).then_some(picked)
}

/// A block and its boundary cycles, each a `p`-gon starting at its smallest
/// vertex and running in the induced boundary direction.
#[derive(Debug, Clone)]
pub struct VertexBlock {
    pub mesh: SimplicialSurface,
    pub boundaries: Vec<Vec<u32>>,
}

/// Triangulated compact surface of type `sig` whose boundary circles are
/// `p`-gons.
pub fn build_vertex_block(sig: SurfaceSignature, p: usize) -> Result<VertexBlock, RealizeError> {
    sig.validate()?;
    if p < 3 {
        return Err(RealizeError::InvalidParameter(format!("boundary polygon size {p} is below 3")));
    }
    let mut base = closed_surface(sig.orientable, sig.genus);
    let holes = sig.boundary_count as usize;
    let picked = loop {
        if let Some(picked) = disjoint_triangles(&base, holes) {
            break picked;
        }
        base = subdivide(&base);
    };
    let tris = oriented(&base);
    let mut keep = vec![true; tris.len()];
    picked.iter().for_each(|&t| keep[t as usize] = false);
    let mut triangles: Vec<[u32; 3]> = tris.iter().zip(&keep).filter(|(_, &k)| k).map(|(t, _)| *t).collect();

    let mut next = base.vertex_count() as u32;
    let mut boundaries = Vec::with_capacity(holes);
    for &t in &picked {
        let polygon: Vec<u32> = (next..next + p as u32).collect();
        next += p as u32;
        triangles.extend(band(&rim(tris[t as usize]), &polygon));
        boundaries.push(polygon);
    }
    let mesh = SimplicialSurface::from_triangles(next as usize, triangles)?;
    Ok(VertexBlock { mesh, boundaries })
}

/// An annulus of `rings` concentric `p`-gons, ring `k` occupying vertices
/// `k·p .. (k+1)·p`, with the field rising ring by ring strictly between `lo`
/// and `hi`.
pub fn build_edge_tube(
    p: usize,
    rings: usize,
    lo: i64,
    hi: i64,
) -> Result<(SimplicialSurface, ScalarField), RealizeError> {
    if lo >= hi {
        return Err(RealizeError::InvalidInterval { lo, hi });
    }
    if p < 3 || rings < 2 {
        return Err(RealizeError::InvalidParameter(format!("tube needs p >= 3 and rings >= 2, got p = {p}, rings = {rings}")));
    }
    let ring = |k: usize| -> Vec<u32> { (0..p).map(|i| (k * p + i) as u32).collect() };
    let mut triangles = Vec::with_capacity(2 * p * (rings - 1));
    for k in 0..rings - 1 {
        triangles.extend(band(&ring(k), &ring(k + 1)));
    }
    let values = (0..rings).flat_map(|k| std::iter::repeat_n(ring_value(lo, hi, k, rings), p)).collect();
    let mesh = SimplicialSurface::from_triangles(rings * p, triangles)?;
    Ok((mesh, ScalarField::new(values)))
}

/// Field value of ring `k` of a tube from `lo` to `hi`.
pub(crate) fn ring_value(lo: i64, hi: i64, k: usize, rings: usize) -> Rational {
    from_int(lo) + from_int(hi - lo) * from_int(k as i64 + 1) / from_int(rings as i64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::MeshError;
    use crate::mesh::{boundary_components, signature};
    use crate::rational::parse;
    use proptest::prelude::*;

    fn check(sig: SurfaceSignature, p: usize) {
        let block = build_vertex_block(sig, p).unwrap();
        assert_eq!(signature(&block.mesh).unwrap(), sig, "{sig}");
        let mut found = boundary_components(&block.mesh);
        let mut expected = block.boundaries.clone();
        found.iter_mut().chain(expected.iter_mut()).for_each(|c| c.sort_unstable());
        found.sort();
        expected.sort();
        assert_eq!(found, expected);
        assert!(block.boundaries.iter().all(|c| c.len() == p));
    }

    #[test]
    fn named_blocks() {
        check(SurfaceSignature::sphere(), 6);
        check(SurfaceSignature::orientable(0, 3), 6);
        check(SurfaceSignature::non_orientable(1, 1), 6);
        check(SurfaceSignature::disk(), 3);
        check(SurfaceSignature::orientable(2, 0), 6);
        check(SurfaceSignature::non_orientable(2, 0), 4);
        check(SurfaceSignature::orientable(0, 8), 5);
    }

    #[test]
    fn oriented_blocks_follow_induced_direction() {
        let block = build_vertex_block(SurfaceSignature::orientable(1, 2), 6).unwrap();
        let tris = orientability(&block.mesh).unwrap().unwrap();
        assert_eq!(tris, block.mesh.triangles());
        for c in &block.boundaries {
            for i in 0..c.len() {
                let (a, b) = (c[i], c[(i + 1) % c.len()]);
                assert!(tris.iter().any(|t| (0..3).any(|k| t[k] == a && t[(k + 1) % 3] == b)));
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            build_vertex_block(SurfaceSignature::non_orientable(0, 1), 6),
            Err(RealizeError::Mesh(MeshError::InvalidSignature(_)))
        ));
        assert!(matches!(build_vertex_block(SurfaceSignature::disk(), 2), Err(RealizeError::InvalidParameter(_))));
        assert!(matches!(build_edge_tube(6, 2, 0, 0), Err(RealizeError::InvalidInterval { lo: 0, hi: 0 })));
        assert!(matches!(build_edge_tube(6, 1, 0, 1), Err(RealizeError::InvalidParameter(_))));
    }

    #[test]
    fn tube_rings() {
        let (mesh, field) = build_edge_tube(6, 2, 0, 1).unwrap();
        assert_eq!(signature(&mesh).unwrap(), SurfaceSignature::annulus());
        assert_eq!(mesh.triangle_count(), 12);
        assert_eq!(field.distinct_values(), vec![parse("1/3").unwrap(), parse("2/3").unwrap()]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn blocks_have_requested_type(orientable: bool, genus in 0u32..3, holes in 0u32..5, p in 3usize..8) {
            let genus = if orientable { genus } else { genus + 1 };
            check(SurfaceSignature::new(orientable, genus, holes), p);
        }

        #[test]
        fn tubes_are_monotone_annuli(p in 3usize..9, rings in 2usize..5, lo in -5i64..5, span in 1i64..6) {
            let (mesh, field) = build_edge_tube(p, rings, lo, lo + span).unwrap();
            prop_assert_eq!(signature(&mesh).unwrap(), SurfaceSignature::annulus());
            let values = field.distinct_values();
            prop_assert_eq!(values.len(), rings);
            prop_assert!(values[0] > from_int(lo) && values[rings - 1] < from_int(lo + span));
        }
    }
}
