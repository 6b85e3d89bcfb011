use crate::graph::{add_apex, Graph, Node};

use super::planarity::is_planar;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

pub fn is_forest(g: &Graph) -> bool {
    let mut uf = UnionFind::new(g.n());
    g.edges().iter().all(|&(u, v)| uf.union(u, v))
}

/// Every connected component has at most as many edges as nodes.
pub fn is_pseudoforest(g: &Graph) -> bool {
    let mut uf = UnionFind::new(g.n());
    for &(u, v) in g.edges() {
        uf.union(u, v);
    }
    let mut nodes = vec![0usize; g.n()];
    let mut edges = vec![0usize; g.n()];
    for v in 0..g.n() {
        nodes[uf.find(v)] += 1;
    }
    for &(u, _) in g.edges() {
        edges[uf.find(u)] += 1;
    }
    (0..g.n()).all(|r| edges[r] <= nodes[r])
}

/// Every degree is even. Connectivity is not required.
pub fn is_eulerian_class(g: &Graph) -> bool {
    (0..g.n()).all(|v| g.degree(v) % 2 == 0)
}

/// Every biconnected block is a single edge or a cycle.
pub fn is_cactus(g: &Graph) -> bool {
    // cacti have at most 3(n-1)/2 edges
    if 2 * g.m() > 3 * g.n().saturating_sub(1) {
        return false;
    }
    blocks(g).iter().all(|b| {
        let mut nodes: Vec<Node> = b.iter().flat_map(|&(u, v)| [u, v]).collect();
        nodes.sort_unstable();
        nodes.dedup();
        b.len() == 1 || b.len() == nodes.len()
    })
}

/// Edge sets of the biconnected blocks (Hopcroft–Tarjan with an edge stack).
pub(crate) fn blocks(g: &Graph) -> Vec<Vec<(Node, Node)>> {
    const UNSEEN: usize = usize::MAX;
    let n = g.n();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut out = Vec::new();
    let mut edge_stack: Vec<(Node, Node)> = Vec::new();
    let mut time = 0;

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // frames: (node, parent, next neighbor index)
        let mut frames: Vec<(Node, Node, usize)> = vec![(root, UNSEEN, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = frames.last_mut() {
            if let Some(&w) = g.neighbors(v).get(*idx) {
                *idx += 1;
                if disc[w] == UNSEEN {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if parent != UNSEEN {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == (parent, v) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

/// Treewidth at most 2, i.e. no `K4` minor. Decided by series-parallel
/// reduction: repeatedly delete nodes of degree at most 1 and suppress nodes
/// of degree 2 (merging parallel edges). The graph has no `K4` minor iff
/// this empties it.
pub fn is_partial_two_tree(g: &Graph) -> bool {
    let n = g.n();
    if n >= 2 && g.m() > 2 * n - 3 {
        return false;
    }
    let mut adj: Vec<std::collections::BTreeSet<Node>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut queue: Vec<Node> = (0..n).collect();
    let mut remaining = n;
    while let Some(v) = queue.pop() {
        if !alive[v] || adj[v].len() > 2 {
            continue;
        }
        let nb: Vec<Node> = adj[v].iter().copied().collect();
        for &w in &nb {
            adj[w].remove(&v);
        }
        if let [x, y] = nb[..] {
            adj[x].insert(y);
            adj[y].insert(x);
        }
        adj[v].clear();
        alive[v] = false;
        remaining -= 1;
        queue.extend(nb);
    }
    remaining == 0
}

/// Outerplanar iff adding an apex adjacent to everything keeps the graph planar.
pub fn is_outerplanar(g: &Graph) -> bool {
    let n = g.n();
    if n <= 3 {
        return true;
    }
    if g.m() > 2 * n - 3 {
        return false;
    }
    is_planar(&add_apex(g))
}
