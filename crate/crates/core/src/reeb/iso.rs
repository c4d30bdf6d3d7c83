//! Exact isomorphism for small loop-free multigraphs.
//!
//! Colour refinement on the disjoint union of both graphs prunes the
//! candidate pairs; a backtracking search then checks edge multiplicities
//! against every already-mapped node.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;

use crate::rational::Rational;

/// Undirected multigraph on nodes `0..node_count`, optionally levelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    pub node_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub levels: Option<Vec<Rational>>,
}

impl Multigraph {
    pub fn new(node_count: usize, edges: Vec<(usize, usize)>) -> Self {
        Self { node_count, edges, levels: None }
    }

    pub fn with_levels(edges: Vec<(usize, usize)>, levels: Vec<Rational>) -> Self {
        Self { node_count: levels.len(), edges, levels: Some(levels) }
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum()
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::<usize>::new(self.node_count);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        (0..self.node_count).filter(|&v| uf.find(v) == v).count()
    }

    fn multiplicities(&self) -> Vec<Vec<u32>> {
        let mut m = vec![vec![0u32; self.node_count]; self.node_count];
        for &(a, b) in &self.edges {
            m[a][b] += 1;
            if a != b {
                m[b][a] += 1;
            }
        }
        m
    }
}

/// First Betti number `E − V + C`.
pub fn betti1(g: &Multigraph) -> usize {
    (g.edges.len() + g.component_count())
        .checked_sub(g.node_count)
        .expect("E + C >= V for every graph")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoMode {
    /// Levels are ignored.
    Abstract,
    /// Nodes may only map to nodes of equal level. Both graphs must carry levels.
    LevelPreserving,
}

/// Finds an isomorphism `g1 → g2`, returned as the image of each `g1` node.
pub fn graph_isomorphic(g1: &Multigraph, g2: &Multigraph, mode: IsoMode) -> Option<Vec<usize>> {
    let n = g1.node_count;
    if n != g2.node_count || g1.edges.len() != g2.edges.len() {
        return None;
    }
    let m1 = g1.multiplicities();
    let m2 = g2.multiplicities();

    let colors = refine(g1, g2, &m1, &m2, mode);
    let (c1, c2) = colors.split_at(n);
    let mut hist1 = HashMap::new();
    let mut hist2 = HashMap::new();
    c1.iter().for_each(|c| *hist1.entry(*c).or_insert(0) += 1);
    c2.iter().for_each(|c| *hist2.entry(*c).or_insert(0) += 1);
    if hist1 != hist2 {
        return None;
    }

    // Most constrained first: small colour classes, then neighbours of
    // already-ordered nodes.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| {
                let attached = order.iter().any(|&u| m1[v][u] > 0);
                (!attached, hist1[&c1[v]], v)
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search(0, &order, c1, c2, &m1, &m2, &mut mapping, &mut used) {
        Some(mapping)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    depth: usize,
    order: &[usize],
    c1: &[usize],
    c2: &[usize],
    m1: &[Vec<u32>],
    m2: &[Vec<u32>],
    mapping: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..c2.len() {
        if used[w] || c2[w] != c1[v] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| m1[v][u] == m2[w][mapping[u]]);
        if !consistent {
            continue;
        }
        mapping[v] = w;
        used[w] = true;
        if search(depth + 1, order, c1, c2, m1, m2, mapping, used) {
            return true;
        }
        used[w] = false;
        mapping[v] = usize::MAX;
    }
    false
}

/// Stable colouring of the disjoint union `g1 ⊔ g2`; node `v` of `g2` is at
/// index `g1.node_count + v`.
fn refine(g1: &Multigraph, g2: &Multigraph, m1: &[Vec<u32>], m2: &[Vec<u32>], mode: IsoMode) -> Vec<usize> {
    let n = g1.node_count;
    let level_rank: Vec<usize> = match mode {
        IsoMode::Abstract => vec![0; 2 * n],
        IsoMode::LevelPreserving => {
            let l1 = g1.levels.as_ref().expect("level-preserving mode needs levels");
            let l2 = g2.levels.as_ref().expect("level-preserving mode needs levels");
            let mut all: Vec<&Rational> = l1.iter().chain(l2.iter()).collect();
            all.sort();
            all.dedup();
            l1.iter().chain(l2.iter()).map(|l| all.binary_search(&l).unwrap()).collect()
        }
    };
    let neighbours = |i: usize| -> Vec<(usize, u32)> {
        let (row, offset) = if i < n { (&m1[i], 0) } else { (&m2[i - n], n) };
        row.iter().enumerate().filter(|(_, &k)| k > 0).map(|(j, &k)| (j + offset, k)).collect()
    };
    let adjacency: Vec<Vec<(usize, u32)>> = (0..2 * n).map(neighbours).collect();

    let mut colors: Vec<usize> = {
        let keys: Vec<(usize, u32)> = (0..2 * n)
            .map(|i| (level_rank[i], adjacency[i].iter().map(|&(_, k)| k).sum()))
            .collect();
        compress(&keys)
    };
    loop {
        let keys: Vec<(usize, Vec<(usize, u32)>)> = (0..2 * n)
            .map(|i| {
                let mut sig: Vec<(usize, u32)> = adjacency[i].iter().map(|&(j, k)| (colors[j], k)).collect();
                sig.sort_unstable();
                (colors[i], sig)
            })
            .collect();
        let next = compress(&keys);
        let classes = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&colors) {
            return next;
        }
        colors = next;
    }
}

fn compress<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<&K> = keys.iter().collect();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(&k).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::from_int;
    use proptest::prelude::*;

    fn theta() -> Multigraph {
        Multigraph::new(2, vec![(0, 1), (0, 1), (0, 1)])
    }

    #[test]
    fn theta_vs_theta_and_path() {
        assert!(graph_isomorphic(&theta(), &theta(), IsoMode::Abstract).is_some());
        let path = Multigraph::new(4, vec![(0, 1), (1, 2), (2, 3)]);
        assert!(graph_isomorphic(&theta(), &path, IsoMode::Abstract).is_none());
    }

    #[test]
    fn torus_graph_with_permuted_ids() {
        let levels = vec![from_int(0), from_int(1), from_int(2), from_int(3)];
        let g = Multigraph::with_levels(vec![(0, 1), (1, 2), (1, 2), (2, 3)], levels);
        let perm = [2usize, 0, 3, 1];
        let mut h_levels = vec![from_int(0); 4];
        for v in 0..4 {
            h_levels[perm[v]] = g.levels.as_ref().unwrap()[v].clone();
        }
        let h = Multigraph::with_levels(g.edges.iter().map(|&(a, b)| (perm[b], perm[a])).collect(), h_levels);
        let w = graph_isomorphic(&g, &h, IsoMode::LevelPreserving).unwrap();
        assert_eq!(w, perm.to_vec());
    }

    #[test]
    fn level_mode_distinguishes_levels() {
        let a = Multigraph::with_levels(vec![(0, 1)], vec![from_int(0), from_int(1)]);
        let b = Multigraph::with_levels(vec![(0, 1)], vec![from_int(0), from_int(2)]);
        assert!(graph_isomorphic(&a, &b, IsoMode::Abstract).is_some());
        assert!(graph_isomorphic(&a, &b, IsoMode::LevelPreserving).is_none());
    }

    #[test]
    fn regular_graphs_need_search() {
        // 6-cycle vs two triangles: same degrees, not isomorphic.
        let c6 = Multigraph::new(6, (0..6).map(|i| (i, (i + 1) % 6)).collect());
        let two = Multigraph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(graph_isomorphic(&c6, &two, IsoMode::Abstract).is_none());
        let shifted = Multigraph::new(6, (0..6).map(|i| ((i + 2) % 6, (i + 3) % 6)).collect());
        assert!(graph_isomorphic(&c6, &shifted, IsoMode::Abstract).is_some());
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(betti1(&Multigraph::new(2, vec![(0, 1)])), 0);
        assert_eq!(betti1(&theta()), 2);
        assert_eq!(betti1(&Multigraph::new(4, vec![(0, 1), (1, 2), (1, 2), (2, 3)])), 1);
        assert_eq!(betti1(&Multigraph::new(3, vec![])), 0);
    }

    /// Brute force over all permutations.
    fn brute(g1: &Multigraph, g2: &Multigraph) -> bool {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let (a, b) = (g1.multiplicities(), g2.multiplicities());
        g1.node_count == g2.node_count
            && perms(g1.node_count)
                .iter()
                .any(|p| (0..g1.node_count).all(|i| (0..g1.node_count).all(|j| a[i][j] == b[p[i]][p[j]])))
    }

    fn arb_graph() -> impl Strategy<Value = Multigraph> {
        (1usize..6).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n), 0..8).prop_map(move |e| {
                Multigraph::new(n, e.into_iter().filter(|(a, b)| a != b).collect())
            })
        })
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(g1 in arb_graph(), g2 in arb_graph()) {
            let found = graph_isomorphic(&g1, &g2, IsoMode::Abstract);
            prop_assert_eq!(found.is_some(), brute(&g1, &g2));
            if let Some(w) = found {
                let (a, b) = (g1.multiplicities(), g2.multiplicities());
                for i in 0..g1.node_count {
                    for j in 0..g1.node_count {
                        prop_assert_eq!(a[i][j], b[w[i]][w[j]]);
                    }
                }
            }
        }

        #[test]
        fn relabelled_copy_is_isomorphic(g in arb_graph(), seed in any::<u64>()) {
            let n = g.node_count;
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let h = Multigraph::new(n, g.edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect());
            prop_assert!(graph_isomorphic(&g, &h, IsoMode::Abstract).is_some());
        }
    }
}
