//! Exponential minor search for small graphs.
//!
//! `h` is a minor of `g` iff `h` is a subgraph of `g`, or `h` is a minor of
//! `g / e` for some edge `e` (a model that is not a plain subgraph has a
//! branch set with an internal edge to contract). Contracted graphs are
//! memoized by their labeled edge list.

use std::collections::HashSet;

use super::ClassError;
use crate::graph::{Graph, Node};

/// Soft size limit for [`has_minor`].
pub const MINOR_SEARCH_LIMIT: usize = 12;

/// Minor test with the default size guard of [`MINOR_SEARCH_LIMIT`] nodes.
pub fn has_minor(g: &Graph, h: &Graph) -> Result<bool, ClassError> {
    if g.n() > MINOR_SEARCH_LIMIT {
        return Err(ClassError::SizeGuard {
            n: g.n(),
            limit: MINOR_SEARCH_LIMIT,
        });
    }
    Ok(has_minor_unguarded(g, h))
}

/// Minor test without a size guard. Exponential in `g.n()`.
pub fn has_minor_unguarded(g: &Graph, h: &Graph) -> bool {
    let min_deg = (0..h.n()).map(|v| h.degree(v)).min().unwrap_or(0);
    let mut search = Search {
        h,
        min_deg,
        seen: HashSet::new(),
    };
    search.visit(g.clone())
}

struct Search<'a> {
    h: &'a Graph,
    min_deg: usize,
    seen: HashSet<(usize, Vec<(Node, Node)>)>,
}

impl Search<'_> {
    fn visit(&mut self, g: Graph) -> bool {
        let g = self.trim(g);
        if g.n() < self.h.n() || g.m() < self.h.m() {
            return false;
        }
        if !self.seen.insert((g.n(), g.edges().to_vec())) {
            return false;
        }
        if contains_subgraph(&g, self.h) {
            return true;
        }
        if g.n() == self.h.n() {
            // contraction would drop below |V(h)|
            return false;
        }
        (0..g.m()).any(|e| self.visit(contract(&g, e)))
    }

    /// Removes nodes that cannot occur in any model of `h`: isolated nodes
    /// when `h` has no isolated node, and leaves when `h` has minimum degree 2.
    fn trim(&self, mut g: Graph) -> Graph {
        let threshold = self.min_deg.min(2);
        loop {
            let keep: Vec<bool> = (0..g.n()).map(|v| g.degree(v) >= threshold).collect();
            if keep.iter().all(|&k| k) {
                return g;
            }
            g = g.induced(&keep).0;
        }
    }
}

/// Contracts edge `e = {u, v}` into `u`; `v` is deleted and ids above it shift down.
fn contract(g: &Graph, e: usize) -> Graph {
    let (u, v) = g.edge(e);
    let fix = |x: Node| -> Node {
        let x = if x == v { u } else { x };
        if x > v {
            x - 1
        } else {
            x
        }
    };
    let edges: Vec<(Node, Node)> = g
        .edges()
        .iter()
        .map(|&(a, b)| (fix(a), fix(b)))
        .filter(|&(a, b)| a != b)
        .collect();
    Graph::from_pairs_unchecked(g.n() - 1, edges)
}

/// Is there an injective map `V(h) -> V(g)` carrying edges to edges?
pub(crate) fn contains_subgraph(g: &Graph, h: &Graph) -> bool {
    if h.n() > g.n() || h.m() > g.m() {
        return false;
    }
    let mut order: Vec<Node> = (0..h.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(h.degree(v)));
    let mut image = vec![usize::MAX; h.n()];
    let mut used = vec![false; g.n()];
    embed(g, h, &order, 0, &mut image, &mut used)
}

fn embed(
    g: &Graph,
    h: &Graph,
    order: &[Node],
    depth: usize,
    image: &mut [Node],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(depth) else {
        return true;
    };
    for cand in 0..g.n() {
        if used[cand] || g.degree(cand) < h.degree(x) {
            continue;
        }
        let ok = order[..depth]
            .iter()
            .all(|&y| !h.has_edge(x, y) || g.has_edge(image[y], cand));
        if !ok {
            continue;
        }
        image[x] = cand;
        used[cand] = true;
        if embed(g, h, order, depth + 1, image, used) {
            return true;
        }
        used[cand] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    #[test]
    fn k4_minor_examples() {
        let k4 = complete(4);
        assert_eq!(has_minor(&k4, &k4), Ok(true));
        assert_eq!(has_minor(&cycle(5), &k4), Ok(false));
        let k4e = k4.without_edge(5).unwrap();
        assert_eq!(has_minor(&k4e, &k4), Ok(false));
        assert_eq!(has_minor(&wheel(5), &k4), Ok(true));
        assert_eq!(has_minor(&prism(3), &k4), Ok(true));
    }

    #[test]
    fn k23_minor_examples() {
        let k23 = complete_bipartite(2, 3);
        assert_eq!(has_minor(&k23, &k23), Ok(true));
        assert_eq!(has_minor(&complete(4), &k23), Ok(false));
        // K4 with one subdivided edge has a K2,3 minor (even as a subgraph)
        let sub = subdivide_edge(&complete(4), 0).unwrap();
        assert_eq!(has_minor(&sub, &k23), Ok(true));
        assert_eq!(has_minor(&cycle(8), &k23), Ok(false));
    }

    #[test]
    fn kuratowski_minors() {
        assert!(has_minor_unguarded(&petersen(), &complete(5)));
        assert!(has_minor_unguarded(&petersen(), &complete_bipartite(3, 3)));
        assert!(!has_minor_unguarded(&prism(4), &complete(5)));
    }

    #[test]
    fn size_guard_is_soft() {
        let big = cycle(13);
        assert_eq!(
            has_minor(&big, &complete(4)),
            Err(ClassError::SizeGuard { n: 13, limit: 12 })
        );
        assert!(!has_minor_unguarded(&big, &complete(4)));
    }
}
