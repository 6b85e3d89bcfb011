use std::collections::BTreeSet;

use crate::graph::{EdgeId, Graph, HostId, Node};

/// Edge labels `1..=count` such that no path with at most three edges
/// repeats a label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    host: HostId,
    phi: Vec<usize>,
    count: usize,
}

impl Labeling {
    /// Wraps an explicit label vector. Labels must lie in `1..=count`.
    /// Distinctness along short paths is not checked here; see
    /// [`labeling_violations`].
    pub fn new(host: &Graph, phi: Vec<usize>) -> Option<Labeling> {
        if phi.len() != host.m() || phi.contains(&0) {
            return None;
        }
        let count = phi.iter().copied().max().unwrap_or(0);
        Some(Labeling {
            host: host.host_id(),
            phi,
            count,
        })
    }

    pub fn host(&self) -> HostId {
        self.host
    }

    pub fn label(&self, e: EdgeId) -> usize {
        self.phi[e]
    }

    pub fn labels(&self) -> &[usize] {
        &self.phi
    }

    pub fn count(&self) -> usize {
        self.count
    }
}

/// Pairs `(e, f)`, `e < f`, that lie together on a path of length at most 3:
/// they share an endpoint, or an edge of `g` joins an endpoint of `e` to an
/// endpoint of `f`.
pub fn conflict_pairs(g: &Graph) -> BTreeSet<(EdgeId, EdgeId)> {
    let mut out = BTreeSet::new();
    for e in 0..g.m() {
        let (a, b) = g.edge(e);
        for f in e + 1..g.m() {
            let (c, d) = g.edge(f);
            let share = a == c || a == d || b == c || b == d;
            let bridged = [(a, c), (a, d), (b, c), (b, d)]
                .iter()
                .any(|&(x, y)| g.has_edge(x, y));
            if share || bridged {
                out.insert((e, f));
            }
        }
    }
    out
}

/// Every simple path with one to three edges, as a list of edge ids.
/// Each path appears once per direction.
pub fn short_paths(g: &Graph) -> Vec<Vec<EdgeId>> {
    fn extend(g: &Graph, nodes: &mut Vec<Node>, edges: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
        if !edges.is_empty() {
            out.push(edges.clone());
        }
        if edges.len() == 3 {
            return;
        }
        let last = *nodes.last().unwrap();
        for &w in g.neighbors(last) {
            if nodes.contains(&w) {
                continue;
            }
            nodes.push(w);
            edges.push(g.edge_id(last, w).unwrap());
            extend(g, nodes, edges, out);
            edges.pop();
            nodes.pop();
        }
    }
    let mut out = Vec::new();
    for v in 0..g.n() {
        extend(g, &mut vec![v], &mut Vec::new(), &mut out);
    }
    out
}

/// Conflict pairs recomputed from [`short_paths`] alone.
pub fn conflict_pairs_by_paths(g: &Graph) -> BTreeSet<(EdgeId, EdgeId)> {
    let mut out = BTreeSet::new();
    for p in short_paths(g) {
        for (i, &e) in p.iter().enumerate() {
            for &f in &p[i + 1..] {
                out.insert((e.min(f), e.max(f)));
            }
        }
    }
    out
}

/// Short paths on which some label repeats.
pub fn labeling_violations(g: &Graph, lab: &Labeling) -> Vec<Vec<EdgeId>> {
    short_paths(g)
        .into_iter()
        .filter(|p| {
            let mut seen: Vec<usize> = p.iter().map(|&e| lab.label(e)).collect();
            seen.sort_unstable();
            seen.windows(2).any(|w| w[0] == w[1])
        })
        .collect()
}

/// `2d(d-1) + 1`: the first-fit bound for maximum degree `d`.
pub fn label_bound(d: usize) -> usize {
    2 * d * d.saturating_sub(1) + 1
}

/// First-fit labeling in edge-id order against [`conflict_pairs`].
///
/// `k` is the regularity degree of the intended input; for irregular graphs
/// the bound is taken at `max(k, max degree)`.
pub fn label_short_paths(g: &Graph, k: usize) -> Labeling {
    let mut conflicts = vec![Vec::new(); g.m()];
    for (e, f) in conflict_pairs(g) {
        conflicts[f].push(e);
    }
    let mut phi = vec![0usize; g.m()];
    for e in 0..g.m() {
        let taken: BTreeSet<usize> = conflicts[e].iter().map(|&f| phi[f]).collect();
        phi[e] = (1..).find(|l| !taken.contains(l)).unwrap();
    }
    let lab = Labeling::new(g, phi).expect("labels start at 1");
    let d = k.max(g.max_degree());
    assert!(
        lab.count() <= label_bound(d),
        "first-fit used {} labels, above the bound {}",
        lab.count(),
        label_bound(d)
    );
    lab
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn conflict_examples() {
        assert_eq!(conflict_pairs(&path(4)).len(), 3);
        let two_k2 = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(conflict_pairs(&two_k2).is_empty());
        assert_eq!(conflict_pairs(&complete(4)).len(), 15);
        // a path with four edges: the two end edges are not on a common short path
        let p5 = path(5);
        let c = conflict_pairs(&p5);
        let first = p5.edge_id(0, 1).unwrap();
        let last = p5.edge_id(3, 4).unwrap();
        assert!(!c.contains(&(first.min(last), first.max(last))));
    }

    #[test]
    fn label_counts() {
        assert_eq!(label_short_paths(&complete(4), 3).count(), 6);
        assert_eq!(label_short_paths(&cycle(5), 2).count(), 5);
        let two_k2 = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(label_short_paths(&two_k2, 1).count(), 1);
        assert_eq!(label_bound(3), 13);
    }

    #[test]
    fn path_enumeration_counts() {
        // K3: 3 edges, 6 directed 2-paths, no 3-paths, each undirected path twice
        assert_eq!(short_paths(&cycle(3)).len(), 2 * 3 + 6);
    }

    proptest! {
        #[test]
        fn structural_and_path_conflicts_agree(n in 1usize..10, p in 0.0f64..1.0, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_gnp(n, p, &mut rng);
            prop_assert_eq!(conflict_pairs(&g), conflict_pairs_by_paths(&g));
        }

        #[test]
        fn labeling_is_sound_on_regular_graphs(half in 3usize..12, k in 3usize..5, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = 2 * half;
            if let Some(g) = random_regular(n, k, &mut rng) {
                let lab = label_short_paths(&g, k);
                prop_assert!(lab.count() <= label_bound(k));
                prop_assert!(labeling_violations(&g, &lab).is_empty());
            }
        }
    }
}
