//! Small-instance isomorphism by backtracking over node bijections.
//! Exponential; meant for test helpers on graphs with a dozen nodes or so.

use super::{Graph, Node};

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.m() != h.m() {
        return false;
    }
    let mut dg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    // map g-nodes in order of decreasing degree, most constrained first
    let mut order: Vec<Node> = (0..g.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut image = vec![usize::MAX; g.n()];
    let mut used = vec![false; h.n()];
    extend(g, h, &order, 0, &mut image, &mut used)
}

fn extend(
    g: &Graph,
    h: &Graph,
    order: &[Node],
    depth: usize,
    image: &mut [Node],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for cand in 0..h.n() {
        if used[cand] || h.degree(cand) != g.degree(v) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g.has_edge(u, v) == h.has_edge(image[u], cand));
        if !consistent {
            continue;
        }
        image[v] = cand;
        used[cand] = true;
        if extend(g, h, order, depth + 1, image, used) {
            return true;
        }
        used[cand] = false;
    }
    image[v] = usize::MAX;
    false
}

/// Largest node count accepted by [`canonical_code`].
pub const CANONICAL_LIMIT: usize = 8;

fn pair_index(n: usize, u: Node, v: Node) -> usize {
    // position of (u, v), u < v, in lexicographic pair order
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// Isomorphism-invariant code: the minimum, over all node relabelings, of
/// the edge bitmask indexed by lexicographic pair position. Brute force over
/// `n!` permutations, so `n <= CANONICAL_LIMIT`.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= CANONICAL_LIMIT, "canonical_code needs n <= {CANONICAL_LIMIT}");
    let mut perm: Vec<Node> = (0..n).collect();
    let code = |perm: &[Node]| {
        g.edges().iter().fold(0u64, |acc, &(u, v)| {
            let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
            acc | 1 << pair_index(n, a, b)
        })
    };
    let mut best = code(&perm);
    // Heap's algorithm
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(code(&perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

fn decode(n: usize, code: u64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if code >> pair_index(n, u, v) & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_canonical(n, edges)
}

/// One representative of every isomorphism class of graphs on `n` nodes,
/// ordered by edge count and then by canonical code.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    use std::collections::BTreeSet;
    let mut out = Vec::new();
    let mut level: BTreeSet<u64> = BTreeSet::from([0]);
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for &code in &level {
            let g = decode(n, code);
            for (u, v) in g.non_edges() {
                next.insert(canonical_code(&g.with_edge(u, v).unwrap()));
            }
            out.push(g);
        }
        level = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    #[test]
    fn basic_pairs() {
        let relabeled_c5 = Graph::new(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap();
        assert!(is_isomorphic(&cycle(5), &relabeled_c5));
        assert!(!is_isomorphic(&cycle(6), &disjoint_union(&cycle(3), &cycle(3))));
        assert!(is_isomorphic(&prism(3), &complement_of_c6()));
        assert!(!is_isomorphic(&complete_bipartite(3, 3), &prism(3)));
    }

    #[test]
    fn class_counts_match_the_known_sequence() {
        let counts: Vec<usize> = (0..=6).map(|n| nonisomorphic_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn canonical_code_agrees_with_isomorphism() {
        let gs = nonisomorphic_graphs(5);
        for (i, a) in gs.iter().enumerate() {
            assert_eq!(canonical_code(a), canonical_code(&decode(5, canonical_code(a))));
            for b in &gs[i + 1..] {
                assert!(!is_isomorphic(a, b));
            }
        }
    }

    fn complement_of_c6() -> Graph {
        let c6 = cycle(6);
        Graph::new(6, c6.non_edges()).unwrap()
    }
}
