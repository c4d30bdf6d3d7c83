use crate::field::ScalarField;
use crate::mesh::SimplicialSurface;
use crate::rational::Rational;

/// A point of a clipped complex: a mesh vertex inside the slab, or the place
/// where a mesh edge crosses the lower or upper slab level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Point {
    Vertex(u32),
    Cross(u32, Side),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Side {
    Lo,
    Hi,
}

/// Clipped triangle outlines have at most five corners.
pub(crate) type PointVec = Vec<Point>;

pub(crate) fn value_range(mesh: &SimplicialSurface, field: &ScalarField, t: u32) -> (Rational, Rational) {
    let [a, b, c] = mesh.triangle(t).map(|v| field.value(v));
    let lo = a.min(b).min(c).clone();
    let hi = a.max(b).max(c).clone();
    (lo, hi)
}

/// Outline of `triangle ∩ f⁻¹([lo, hi])`, walked in the triangle's stored
/// vertex order. One point means the triangle only touches the slab at a
/// vertex, two points a segment, three or more a convex polygon.
///
/// When `lo == hi` every crossing is reported on [`Side::Lo`].
pub(crate) fn clip_triangle(
    mesh: &SimplicialSurface,
    field: &ScalarField,
    t: u32,
    lo: &Rational,
    hi: &Rational,
) -> PointVec {
    let tri = mesh.triangle(t);
    let edges = mesh.triangle_edges(t);
    let mut out = PointVec::with_capacity(5);
    let degenerate = lo == hi;
    for k in 0..3 {
        let (u, w, e) = (tri[k], tri[(k + 1) % 3], edges[k]);
        let (fu, fw) = (field.value(u), field.value(w));
        if lo <= fu && fu <= hi {
            out.push(Point::Vertex(u));
        }
        let crosses = |level: &Rational| (fu < level && level < fw) || (fw < level && level < fu);
        let lo_cross = crosses(lo);
        let hi_cross = !degenerate && crosses(hi);
        if fu < fw {
            if lo_cross {
                out.push(Point::Cross(e, Side::Lo));
            }
            if hi_cross {
                out.push(Point::Cross(e, Side::Hi));
            }
        } else {
            if hi_cross {
                out.push(Point::Cross(e, Side::Hi));
            }
            if lo_cross {
                out.push(Point::Cross(e, Side::Lo));
            }
        }
    }
    out
}
