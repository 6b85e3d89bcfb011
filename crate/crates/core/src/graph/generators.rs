//! Named graph families and seeded random generators.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Graph, Node};

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_canonical(n, edges)
}

/// Path on `n` nodes (`n - 1` edges).
pub fn path(n: usize) -> Graph {
    Graph::from_canonical(n, (1..n).map(|v| (v - 1, v)).collect())
}

/// Cycle on `n >= 3` nodes.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a simple cycle needs at least 3 nodes");
    Graph::from_pairs_unchecked(n, (0..n).map(|v| (v, (v + 1) % n)).collect())
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
    Graph::from_canonical(a + b, edges)
}

/// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_pairs_unchecked(10, edges)
}

/// Circular ladder `C_n x K_2`; `prism(3)` is the triangular prism.
pub fn prism(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((n + i, n + (i + 1) % n));
        edges.push((i, n + i));
    }
    Graph::from_pairs_unchecked(2 * n, edges)
}

/// Wheel with rim `C_n` on `0..n` and hub `n`.
pub fn wheel(n: usize) -> Graph {
    super::add_apex(&cycle(n))
}

/// Two triangles sharing node 0.
pub fn bowtie() -> Graph {
    Graph::from_pairs_unchecked(5, vec![(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
}

/// `rows x cols` grid graph.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_pairs_unchecked(rows * cols, edges)
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_canonical(n, edges)
}

/// Uniform random graph with exactly `m` edges (`m` is clamped to `C(n,2)`).
pub fn random_gnm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    let mut all: Vec<(Node, Node)> = complete(n).edges().to_vec();
    all.shuffle(rng);
    all.truncate(m);
    all.sort_unstable();
    Graph::from_canonical(n, all)
}

/// Random simple `k`-regular graph by the pairing model with restarts.
/// Returns `None` when `n * k` is odd, `k >= n`, or 1000 attempts fail.
pub fn random_regular<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Option<Graph> {
    if (n * k) % 2 == 1 || (k >= n && !(n == 0 || k == 0)) {
        return None;
    }
    'attempt: for _ in 0..1000 {
        let mut points: Vec<Node> = (0..n).flat_map(|v| std::iter::repeat(v).take(k)).collect();
        points.shuffle(rng);
        let mut edges = Vec::with_capacity(n * k / 2);
        for pair in points.chunks(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        return Some(Graph::from_canonical(n, edges));
    }
    None
}
