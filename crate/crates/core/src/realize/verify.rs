use std::collections::{HashMap, HashSet};

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{DecoratedGraph, RealizationOutput};
use crate::error::RealizeError;
use crate::mesh::SurfaceSignature;
use crate::rational::{self, from_int, Rational};
use crate::reeb::{
    compute_reeb_graph, graph_isomorphic, interval_components, level_components, Cell, IsoMode, LevelShape, Multigraph,
};

/// Outcome of the three realization checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// The computed Reeb graph matches the graph, critical node by height.
    pub reeb_graph: bool,
    /// Each tube is crossed by a single circle at its middle value.
    pub edge_fibers: bool,
    /// Each block's neighbourhood has the decorated surface type.
    pub vertex_neighborhoods: bool,
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.reeb_graph && self.edge_fibers && self.vertex_neighborhoods
    }

    /// 1-based index of the first failing check.
    pub fn first_failure(&self) -> Option<u8> {
        [self.reeb_graph, self.edge_fibers, self.vertex_neighborhoods]
            .iter()
            .position(|ok| !ok)
            .map(|i| i as u8 + 1)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("plain data serializes");
        text.push('\n');
        text
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Replaces the automatic neighbourhood radius around every block.
    pub neighborhood_radius: Option<Rational>,
}

/// Runs all checks and reports every failure.
pub fn check_realization(dg: &DecoratedGraph, out: &RealizationOutput) -> Result<VerificationReport, RealizeError> {
    check_realization_with(dg, out, &VerifyOptions::default())
}

/// Like [`check_realization`] but fails with the first failing check.
pub fn verify_realization(dg: &DecoratedGraph, out: &RealizationOutput) -> Result<VerificationReport, RealizeError> {
    let report = check_realization(dg, out)?;
    match report.first_failure() {
        None => Ok(report),
        Some(clause) => Err(RealizeError::VerificationFailed { clause, report: Box::new(report) }),
    }
}

fn check_shape(dg: &DecoratedGraph, out: &RealizationOutput) -> Result<(), RealizeError> {
    let c = &out.correspondence;
    let mismatch = |what: &str| Err(RealizeError::InvalidParameter(format!("realization does not match the graph: {what}")));
    if c.vertices.len() != dg.vertices.len() || c.vertices.iter().zip(&dg.vertices).any(|(b, v)| b.id != v.id) {
        return mismatch("vertex ids differ");
    }
    if c.edges.len() != dg.edges.len() || c.edges.iter().zip(&dg.edges).any(|(t, e)| t.id != e.id) {
        return mismatch("edge ids differ");
    }
    let n = out.mesh.triangle_count() as u32;
    let mut owner = vec![false; n as usize];
    for t in c.vertices.iter().flat_map(|b| &b.triangles).chain(c.edges.iter().flat_map(|t| &t.triangles)) {
        if *t >= n || std::mem::replace(&mut owner[*t as usize], true) {
            return mismatch("triangle lists do not partition the mesh");
        }
    }
    if owner.iter().any(|o| !o) {
        return mismatch("triangle lists do not partition the mesh");
    }
    if c.vertices.iter().any(|b| b.triangles.is_empty()) {
        return mismatch("empty block");
    }
    out.field.check_len(out.mesh.vertex_count())?;
    Ok(())
}

/// Skeleton with blocks that are regular for the field removed: annuli whose
/// two edges lead one down and one up.
fn critical_skeleton(dg: &DecoratedGraph, heights: &[i64]) -> Multigraph {
    let n = dg.vertices.len();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, e) in dg.edges.iter().enumerate() {
        incident[e.ends[0]].push(k);
        incident[e.ends[1]].push(k);
    }
    let other = |k: usize, v: usize| {
        let [a, b] = dg.edges[k].ends;
        if a == v {
            b
        } else {
            a
        }
    };
    let regular: Vec<bool> = (0..n)
        .map(|v| {
            dg.vertices[v].gamma == SurfaceSignature::annulus() && incident[v].len() == 2 && {
                let [x, y] = [other(incident[v][0], v), other(incident[v][1], v)].map(|u| heights[u]);
                (x < heights[v]) != (y < heights[v])
            }
        })
        .collect();
    let kept: Vec<usize> = (0..n).filter(|&v| !regular[v]).collect();
    let mut index = vec![usize::MAX; n];
    kept.iter().enumerate().for_each(|(i, &v)| index[v] = i);

    let mut edges = Vec::new();
    for (k, e) in dg.edges.iter().enumerate() {
        let [a, b] = e.ends;
        let (lo, mut hi) = if heights[a] < heights[b] { (a, b) } else { (b, a) };
        if regular[lo] {
            continue;
        }
        let mut via = k;
        while regular[hi] {
            via = incident[hi].iter().copied().find(|&j| j != via).expect("regular block has two edges");
            hi = other(via, hi);
        }
        edges.push((index[lo], index[hi]));
    }
    Multigraph::with_levels(edges, kept.iter().map(|&v| from_int(heights[v])).collect())
}

pub fn check_realization_with(
    dg: &DecoratedGraph,
    out: &RealizationOutput,
    options: &VerifyOptions,
) -> Result<VerificationReport, RealizeError> {
    check_shape(dg, out)?;
    let heights = out.correspondence.heights();
    let (mesh, field) = (&out.mesh, &out.field);
    let mut failures = Vec::new();

    let reeb = compute_reeb_graph(mesh, field)?;
    let expected = critical_skeleton(dg, &heights);
    let reeb_graph = graph_isomorphic(&reeb.skeleton(), &expected, IsoMode::LevelPreserving).is_some();
    if !reeb_graph {
        failures.push(format!(
            "Reeb graph has {} nodes and {} edges; no height-preserving match with the {} nodes and {} edges expected",
            reeb.node_count(),
            reeb.edge_count(),
            expected.node_count,
            expected.edges.len()
        ));
    }

    let mut levels: HashMap<Rational, Vec<crate::reeb::LevelComponent>> = HashMap::new();
    let mut edge_fibers = true;
    for (e, tube) in dg.edges.iter().zip(&out.correspondence.edges) {
        let [a, b] = e.ends.map(|v| from_int(heights[v]));
        let mid = rational::midpoint(&a, &b);
        let comps = levels.entry(mid.clone()).or_insert_with(|| level_components(mesh, field, &mid));
        let cells: HashSet<u32> = tube.triangles.iter().copied().collect();
        let inside: Vec<_> = comps
            .iter()
            .filter(|c| c.triangles().next().is_some() && c.triangles().all(|t| cells.contains(&t)))
            .collect();
        if inside.len() != 1 || inside[0].shape != LevelShape::Cycle {
            edge_fibers = false;
            failures.push(format!(
                "edge {:?}: level {} meets the tube in {} component(s){}",
                e.id,
                rational::format(&mid),
                inside.len(),
                if inside.len() == 1 { " that is not a circle" } else { "" }
            ));
        }
    }

    let mut vertex_neighborhoods = true;
    for (i, (v, block)) in dg.vertices.iter().zip(&out.correspondence.vertices).enumerate() {
        let h = from_int(heights[i]);
        let delta = match &options.neighborhood_radius {
            Some(r) => r.clone(),
            None => neighborhood_radius(dg, out, i, &h),
        };
        let comps = interval_components(mesh, field, &(&h - &delta), &(&h + &delta))?;
        let anchor = Cell::Triangle(block.triangles[0]);
        let found = comps.iter().find(|c| c.cells.binary_search(&anchor).is_ok()).and_then(|c| c.signature);
        if found != Some(v.gamma) {
            vertex_neighborhoods = false;
            failures.push(format!(
                "vertex {:?}: neighbourhood of radius {} is {}, expected {}",
                v.id,
                rational::format(&delta),
                found.map_or("not a surface".to_string(), |s| s.to_string()),
                v.gamma
            ));
        }
    }

    Ok(VerificationReport { reeb_graph, edge_fibers, vertex_neighborhoods, failures })
}

/// Half the gap to the nearest other height, capped at the nearest tube
/// value next to the block.
fn neighborhood_radius(dg: &DecoratedGraph, out: &RealizationOutput, v: usize, h: &Rational) -> Rational {
    let heights = out.correspondence.heights();
    let mut best: Option<Rational> = heights
        .iter()
        .enumerate()
        .filter(|&(u, _)| u != v)
        .map(|(_, &x)| (from_int(x) - h).abs() / from_int(2))
        .min();
    for (e, tube) in dg.edges.iter().zip(&out.correspondence.edges) {
        if !e.ends.contains(&v) {
            continue;
        }
        for &t in &tube.triangles {
            for x in out.mesh.triangle(t) {
                let d = (out.field.value(x) - h).abs();
                if !d.is_zero() && best.as_ref().is_none_or(|b| &d < b) {
                    best = Some(d);
                }
            }
        }
    }
    best.unwrap_or_else(|| rational::parse("1/2").expect("literal"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realize::{realize, RealizeOptions};
    use crate::reeb::{sampled_reeb_oracle, Multigraph};

    fn theta() -> DecoratedGraph {
        DecoratedGraph::planar(&Multigraph::new(2, vec![(0, 1), (0, 1), (0, 1)]))
    }

    #[test]
    fn theta_passes_everything() {
        let dg = theta();
        let out = realize(&dg, &RealizeOptions::default()).unwrap();
        let report = verify_realization(&dg, &out).unwrap();
        assert!(report.passed() && report.failures.is_empty());
        let reeb = compute_reeb_graph(&out.mesh, &out.field).unwrap();
        for k in [1, 2, 5] {
            let oracle = sampled_reeb_oracle(&out.mesh, &out.field, k).unwrap();
            assert!(graph_isomorphic(&oracle.skeleton(), &reeb.skeleton(), IsoMode::LevelPreserving).is_some());
        }
    }

    #[test]
    fn two_disks_have_disk_neighbourhoods() {
        let dg = DecoratedGraph::planar(&Multigraph::new(2, vec![(0, 1)]));
        let out = realize(&dg, &RealizeOptions::default()).unwrap();
        assert!(verify_realization(&dg, &out).unwrap().passed());
        for v in 0..2 {
            let h = from_int(v as i64);
            let r = neighborhood_radius(&dg, &out, v, &h);
            assert_eq!(r, rational::parse("1/3").unwrap());
        }
    }

    #[test]
    fn wide_neighbourhood_fails() {
        let dg = theta();
        let out = realize(&dg, &RealizeOptions::default()).unwrap();
        let options = VerifyOptions { neighborhood_radius: Some(rational::parse("3/2").unwrap()) };
        let report = check_realization_with(&dg, &out, &options).unwrap();
        assert!(report.reeb_graph && report.edge_fibers);
        assert!(!report.vertex_neighborhoods);
        assert_eq!(report.first_failure(), Some(3));
    }

    #[test]
    fn raised_ring_breaks_the_graph() {
        let dg = theta();
        let mut out = realize(&dg, &RealizeOptions::default()).unwrap();
        // Ring 0 of the first tube is lifted to the upper block height.
        let tube = &out.correspondence.edges[0].triangles;
        let top = from_int(1);
        let ring: Vec<u32> = tube
            .iter()
            .flat_map(|&t| out.mesh.triangle(t))
            .filter(|&x| out.field.value(x) == &rational::parse("1/3").unwrap())
            .collect();
        assert!(!ring.is_empty());
        for x in ring {
            out.field.values_mut()[x as usize] = top.clone();
        }
        assert!(matches!(
            verify_realization(&dg, &out),
            Err(RealizeError::VerificationFailed { clause: 1, .. })
        ));
    }

    #[test]
    fn regular_annulus_blocks_are_suppressed() {
        // disk - annulus - annulus - disk, climbing: a sphere with two extrema.
        let text = r#"{"vertices":[{"id":"a"},{"id":"b"},{"id":"c"},{"id":"d"}],
            "edges":[{"id":"x","ends":["a","b"]},{"id":"y","ends":["b","c"]},{"id":"z","ends":["c","d"]}]}"#;
        let dg = DecoratedGraph::from_json(text).unwrap();
        let out = realize(&dg, &RealizeOptions::default()).unwrap();
        assert!(verify_realization(&dg, &out).unwrap().passed());
        assert_eq!(critical_skeleton(&dg, &[0, 1, 2, 3]).node_count, 2);
        // Folding the path makes both annuli critical.
        assert_eq!(critical_skeleton(&dg, &[0, 3, 1, 2]).node_count, 4);
    }

    #[test]
    fn mismatched_realization_is_an_error() {
        let out = realize(&theta(), &RealizeOptions::default()).unwrap();
        let other = DecoratedGraph::planar(&Multigraph::new(2, vec![(0, 1)]));
        assert!(matches!(check_realization(&other, &out), Err(RealizeError::InvalidParameter(_))));
    }
}
