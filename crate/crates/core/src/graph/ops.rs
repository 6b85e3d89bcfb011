//! Structural operations. All of them are pure: inputs are borrowed and a
//! fresh graph is returned.

use super::{EdgeId, EdgeSet, Graph, GraphError, Node};

fn check_node(g: &Graph, v: Node) -> Result<(), GraphError> {
    if v < g.n() {
        Ok(())
    } else {
        Err(GraphError::NodeOutOfRange { node: v, n: g.n() })
    }
}

/// Glues `g2` onto `g1` by identifying `v2` with `v1`.
///
/// Nodes of `g1` keep their ids. Node `v2` becomes `v1`; every other node `x`
/// of `g2` becomes `g1.n() + x` (or `g1.n() + x - 1` when `x > v2`).
pub fn one_sum(g1: &Graph, v1: Node, g2: &Graph, v2: Node) -> Result<Graph, GraphError> {
    check_node(g1, v1)?;
    check_node(g2, v2)?;
    let base = g1.n();
    let map = |x: Node| -> Node {
        match x.cmp(&v2) {
            std::cmp::Ordering::Equal => v1,
            std::cmp::Ordering::Less => base + x,
            std::cmp::Ordering::Greater => base + x - 1,
        }
    };
    let edges = g1
        .edges()
        .iter()
        .copied()
        .chain(g2.edges().iter().map(|&(a, b)| (map(a), map(b))));
    Graph::new(g1.n() + g2.n() - 1, edges)
}

/// Replaces the degree-2 node `v` by an edge between its two neighbors.
///
/// Returns the smoothed graph and the old-to-new id map (`None` for `v`).
/// Refuses to smooth when the neighbors are already adjacent.
pub fn smooth_degree_two(g: &Graph, v: Node) -> Result<(Graph, Vec<Option<Node>>), GraphError> {
    check_node(g, v)?;
    let nb = g.neighbors(v);
    if nb.len() != 2 {
        return Err(GraphError::NotDegreeTwo {
            node: v,
            degree: nb.len(),
        });
    }
    let (x, y) = (nb[0], nb[1]);
    if g.has_edge(x, y) {
        return Err(GraphError::WouldCreateParallel(x, y));
    }
    let mut keep = vec![true; g.n()];
    keep[v] = false;
    let (without, map) = g.induced(&keep);
    let joined = without.with_edge(map[x].unwrap(), map[y].unwrap())?;
    Ok((joined, map))
}

/// Replaces edge `e = {u, v}` by the path `u - w - v` with fresh node `w = n`.
pub fn subdivide_edge(g: &Graph, e: EdgeId) -> Result<Graph, GraphError> {
    if e >= g.m() {
        return Err(GraphError::InvalidEdgeId { id: e, m: g.m() });
    }
    let (u, v) = g.edge(e);
    let w = g.n();
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != e)
        .map(|(_, &p)| p)
        .chain([(u, w), (v, w)]);
    Graph::new(g.n() + 1, edges)
}

/// The spanning subgraph `(V(g), es)`. Isolated nodes are kept.
pub fn subgraph(g: &Graph, es: &EdgeSet) -> Result<Graph, GraphError> {
    if es.host() != g.host_id() {
        return Err(GraphError::HostMismatch);
    }
    Ok(Graph::from_canonical(
        g.n(),
        es.iter().map(|id| g.edge(id)).collect(),
    ))
}

/// Adds node `n` adjacent to every existing node.
pub fn add_apex(g: &Graph) -> Graph {
    let apex = g.n();
    let mut edges = g.edges().to_vec();
    edges.extend((0..apex).map(|v| (v, apex)));
    edges.sort_unstable();
    Graph::from_canonical(apex + 1, edges)
}

/// Places `g2` after `g1`: node `x` of `g2` becomes `g1.n() + x`.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
    let base = g1.n();
    let edges = g1
        .edges()
        .iter()
        .copied()
        .chain(g2.edges().iter().map(|&(a, b)| (a + base, b + base)))
        .collect();
    Graph::from_canonical(base + g2.n(), edges)
}

/// Node sets of the connected components, each sorted, ordered by smallest member.
pub fn connected_components(g: &Graph) -> Vec<Vec<Node>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn degrees(g: &Graph) -> Vec<usize> {
    (0..g.n()).map(|v| g.degree(v)).collect()
}

pub fn is_k_regular(g: &Graph, k: usize) -> bool {
    (0..g.n()).all(|v| g.degree(v) == k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn one_sum_examples() {
        let bowtie = one_sum(&cycle(3), 0, &cycle(3), 0).unwrap();
        assert_eq!((bowtie.n(), bowtie.m()), (5, 6));
        assert_eq!(bowtie.degree(0), 4);

        let p2 = one_sum(&path(2), 1, &path(2), 0).unwrap();
        assert!(is_isomorphic(&p2, &path(3)));

        let g = one_sum(&complete(4), 2, &cycle(3), 1).unwrap();
        assert_eq!((g.n(), g.m()), (6, 9));

        assert!(one_sum(&cycle(3), 3, &cycle(3), 0).is_err());
    }

    #[test]
    fn smoothing_examples() {
        let (g, map) = smooth_degree_two(&path(3), 1).unwrap();
        assert_eq!(g, path(2));
        assert_eq!(map, vec![Some(0), None, Some(1)]);

        let (g, _) = smooth_degree_two(&cycle(4), 2).unwrap();
        assert!(is_isomorphic(&g, &cycle(3)));

        assert_eq!(
            smooth_degree_two(&cycle(3), 0).unwrap_err(),
            GraphError::WouldCreateParallel(1, 2)
        );
        assert!(matches!(
            smooth_degree_two(&complete(4), 0),
            Err(GraphError::NotDegreeTwo { node: 0, degree: 3 })
        ));
    }

    #[test]
    fn subdivision_examples() {
        assert!(is_isomorphic(&subdivide_edge(&path(2), 0).unwrap(), &path(3)));
        assert!(is_isomorphic(&subdivide_edge(&cycle(3), 1).unwrap(), &cycle(4)));
        let k5 = complete(5);
        let mut g = k5.clone();
        for &(u, v) in k5.edges() {
            g = subdivide_edge(&g, g.edge_id(u, v).unwrap()).unwrap();
        }
        assert_eq!((g.n(), g.m()), (15, 20));
        assert_eq!(g.max_degree(), 4);
        assert!(subdivide_edge(&path(2), 1).is_err());
    }

    #[test]
    fn subgraph_examples() {
        let k4 = complete(4);
        let none = subgraph(&k4, &EdgeSet::empty(&k4)).unwrap();
        assert_eq!((none.n(), none.m()), (4, 0));
        assert_eq!(subgraph(&k4, &EdgeSet::full(&k4)).unwrap(), k4);
        let c3 = cycle(3);
        let one = subgraph(&c3, &EdgeSet::from_ids(&c3, [1]).unwrap()).unwrap();
        assert_eq!((one.n(), one.m()), (3, 1));
        assert_eq!(
            subgraph(&k4, &EdgeSet::full(&c3)),
            Err(GraphError::HostMismatch)
        );
    }

    #[test]
    fn apex_examples() {
        assert_eq!(add_apex(&cycle(3)), complete(4));
        assert_eq!(add_apex(&Graph::empty(0)), Graph::empty(1));
        let w4 = add_apex(&cycle(4));
        assert_eq!((w4.n(), w4.m()), (5, 8));
    }

    #[test]
    fn regularity_and_components() {
        assert!(is_k_regular(&complete(4), 3));
        assert!(is_k_regular(&petersen(), 3));
        assert!(!is_k_regular(&path(3), 1));
        let g = disjoint_union(&cycle(3), &path(2));
        assert_eq!(connected_components(&g), vec![vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(degrees(&g), vec![2, 2, 2, 1, 1]);
    }

    proptest! {
        #[test]
        fn one_sum_counts(seed in any::<u64>(), n1 in 1usize..7, n2 in 1usize..7) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g1 = random_gnp(n1, 0.5, &mut rng);
            let g2 = random_gnp(n2, 0.5, &mut rng);
            let s = one_sum(&g1, n1 - 1, &g2, 0).unwrap();
            prop_assert_eq!(s.n(), n1 + n2 - 1);
            prop_assert_eq!(s.m(), g1.m() + g2.m());
        }

        #[test]
        fn subgraph_keeps_node_count(seed in any::<u64>(), n in 0usize..9, keep in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_gnp(n, 0.4, &mut rng);
            let es = EdgeSet::from_ids(&g, (0..g.m()).filter(|i| keep >> i & 1 == 1)).unwrap();
            prop_assert_eq!(subgraph(&g, &es).unwrap().n(), g.n());
        }

        #[test]
        fn smooth_then_subdivide_is_identity_up_to_iso(seed in any::<u64>(), n in 3usize..=10) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_gnp(n, 0.35, &mut rng);
            for v in 0..g.n() {
                if let Ok((s, _)) = smooth_degree_two(&g, v) {
                    let nb = g.neighbors(v);
                    let (x, y) = (nb[0], nb[1]);
                    let fx = if x > v { x - 1 } else { x };
                    let fy = if y > v { y - 1 } else { y };
                    let e = s.edge_id(fx, fy).unwrap();
                    let back = subdivide_edge(&s, e).unwrap();
                    prop_assert!(is_isomorphic(&back, &g));
                }
            }
        }
    }
}
