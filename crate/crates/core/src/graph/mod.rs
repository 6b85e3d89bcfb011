//! Finite simple undirected graphs with dense node ids and canonical edge order.
//!
//! A [`Graph`] stores its edges as `(u, v)` pairs with `u < v`, sorted
//! lexicographically. The position of an edge in that order is its
//! [`EdgeId`]; every solver and certificate in the crate is keyed by it.

mod generators;
mod io;
mod iso;
mod ops;

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

pub use generators::*;
pub use io::{parse_edge_list, serialize_edge_list};
pub use iso::{canonical_code, is_isomorphic, nonisomorphic_graphs, CANONICAL_LIMIT};
pub use ops::{
    add_apex, connected_components, degrees, disjoint_union, is_k_regular, one_sum,
    smooth_degree_two, subdivide_edge, subgraph,
};

pub type Node = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("node {node} out of range for a graph on {n} nodes")]
    NodeOutOfRange { node: Node, n: usize },
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Node, Node),
    #[error("self-loop at node {0}")]
    Loop(Node),
    #[error("edge id {id} out of range ({m} edges)")]
    InvalidEdgeId { id: EdgeId, m: usize },
    #[error("node {node} has degree {degree}, expected 2")]
    NotDegreeTwo { node: Node, degree: usize },
    #[error("smoothing would create a parallel edge {{{0}, {1}}}")]
    WouldCreateParallel(Node, Node),
    #[error("edge set belongs to a different host graph")]
    HostMismatch,
}

/// Fingerprint of a graph's node count and edge list.
///
/// Edge sets, partitions and labelings remember the fingerprint of the graph
/// they index into so a mismatched pairing is caught instead of silently
/// reading the wrong edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HostId(u64);

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Node, Node)>,
    adj: Vec<Vec<Node>>,
    host: HostId,
}

impl Graph {
    /// Build a graph on `n` nodes. Pairs may be given in either orientation;
    /// loops, duplicates and out-of-range ids are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (Node, Node)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::NodeOutOfRange { node: x, n });
                }
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_canonical(n, list))
    }

    /// `edges` must already be canonical: `u < v < n`, sorted, no duplicates.
    pub(crate) fn from_canonical(n: usize, edges: Vec<(Node, Node)>) -> Graph {
        debug_assert!(edges.iter().all(|&(u, v)| u < v && v < n));
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let mut h = DefaultHasher::new();
        n.hash(&mut h);
        edges.hash(&mut h);
        let host = HostId(h.finish());
        Graph { n, edges, adj, host }
    }

    /// Sorts and dedups an arbitrary pair list that is known to be loop-free
    /// and in range. Used by hot paths that build many small subgraphs.
    pub(crate) fn from_pairs_unchecked(n: usize, mut edges: Vec<(Node, Node)>) -> Graph {
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Self::from_canonical(n, edges)
    }

    pub fn empty(n: usize) -> Graph {
        Self::from_canonical(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Node, Node)] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> (Node, Node) {
        self.edges[id]
    }

    pub fn host_id(&self) -> HostId {
        self.host
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: Node) -> &[Node] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Node) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Node, v: Node) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_id(&self, u: Node, v: Node) -> Option<EdgeId> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// All pairs `u < v` that are not edges, in lexicographic order.
    pub fn non_edges(&self) -> Vec<(Node, Node)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Copy of the graph with one more edge.
    pub fn with_edge(&self, u: Node, v: Node) -> Result<Graph, GraphError> {
        Graph::new(self.n, self.edges.iter().copied().chain([(u, v)]))
    }

    pub fn without_edge(&self, id: EdgeId) -> Result<Graph, GraphError> {
        if id >= self.m() {
            return Err(GraphError::InvalidEdgeId { id, m: self.m() });
        }
        let mut edges = self.edges.clone();
        edges.remove(id);
        Ok(Self::from_canonical(self.n, edges))
    }

    /// Drops every node that is not in `keep`, compacting ids in increasing
    /// order. Returns the induced subgraph and the old-to-new id map.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<Option<Node>>) {
        let mut map = vec![None; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if keep[v] {
                map[v] = Some(next);
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((map[u]?, map[v]?)))
            .collect();
        (Self::from_canonical(next, edges), map)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// A subset of the edges of one host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    host: HostId,
    members: Vec<bool>,
}

impl EdgeSet {
    pub fn empty(host: &Graph) -> EdgeSet {
        EdgeSet {
            host: host.host_id(),
            members: vec![false; host.m()],
        }
    }

    pub fn full(host: &Graph) -> EdgeSet {
        EdgeSet {
            host: host.host_id(),
            members: vec![true; host.m()],
        }
    }

    pub fn from_ids<I>(host: &Graph, ids: I) -> Result<EdgeSet, GraphError>
    where
        I: IntoIterator<Item = EdgeId>,
    {
        let mut set = EdgeSet::empty(host);
        for id in ids {
            if id >= host.m() {
                return Err(GraphError::InvalidEdgeId { id, m: host.m() });
            }
            set.members[id] = true;
        }
        Ok(set)
    }

    pub fn host(&self) -> HostId {
        self.host
    }

    pub fn insert(&mut self, id: EdgeId) {
        self.members[id] = true;
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.members.get(id).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&b| b)
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }
}

/// A set of node ids of some host graph, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NodeSet {
    nodes: Vec<Node>,
}

impl NodeSet {
    pub fn new<I: IntoIterator<Item = Node>>(nodes: I) -> NodeSet {
        let mut nodes: Vec<Node> = nodes.into_iter().collect();
        nodes.sort_unstable();
        nodes.dedup();
        NodeSet { nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, v: Node) -> bool {
        self.nodes.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[Node] {
        &self.nodes
    }

    pub fn iter(&self) -> impl Iterator<Item = Node> + '_ {
        self.nodes.iter().copied()
    }

    /// True iff every id is a node of `g` and no two members are adjacent.
    pub fn is_independent_in(&self, g: &Graph) -> bool {
        self.nodes.iter().all(|&v| v < g.n())
            && self
                .nodes
                .iter()
                .all(|&v| g.neighbors(v).iter().all(|&w| !self.contains(w)))
    }
}
