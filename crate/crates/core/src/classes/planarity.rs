//! Left-right planarity test (de Fraysseix–Rosenstiehl criterion, in the
//! formulation by Brandes). Decision only; no embedding is produced.
//!
//! Runs in `O(n + m)` after the `m <= 3n - 6` shortcut.

use crate::graph::{Graph, Node};

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug)]
struct Interval {
    low: usize,
    high: usize,
}

impl Interval {
    const EMPTY: Interval = Interval {
        low: NONE,
        high: NONE,
    };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Clone, Copy, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

pub fn is_planar(g: &Graph) -> bool {
    let n = g.n();
    if n >= 3 && g.m() > 3 * n - 6 {
        return false;
    }
    if n < 5 {
        return true;
    }
    LrState::new(g).run()
}

struct LrState<'a> {
    g: &'a Graph,
    // per node
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    out: Vec<Vec<usize>>,
    // per edge (edge ids of `g`, each oriented exactly once)
    dir: Vec<(Node, Node)>,
    oriented: Vec<bool>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<usize>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<usize>,
    refs: Vec<usize>,
    stack: Vec<ConflictPair>,
}

impl<'a> LrState<'a> {
    fn new(g: &'a Graph) -> Self {
        let (n, m) = (g.n(), g.m());
        LrState {
            g,
            height: vec![NONE; n],
            parent_edge: vec![NONE; n],
            out: vec![Vec::new(); n],
            dir: vec![(NONE, NONE); m],
            oriented: vec![false; m],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting: vec![0; m],
            stack_bottom: vec![0; m],
            lowpt_edge: vec![NONE; m],
            refs: vec![NONE; m],
            stack: Vec::new(),
        }
    }

    fn run(mut self) -> bool {
        let mut roots = Vec::new();
        for v in 0..self.g.n() {
            if self.height[v] == NONE {
                self.height[v] = 0;
                roots.push(v);
                self.orient(v);
            }
        }
        for v in 0..self.g.n() {
            let nesting = &self.nesting;
            self.out[v].sort_by_key(|&e| nesting[e]);
        }
        roots.into_iter().all(|r| self.test(r))
    }

    fn orient(&mut self, v: Node) {
        let e = self.parent_edge[v];
        for i in 0..self.g.neighbors(v).len() {
            let w = self.g.neighbors(v)[i];
            let id = self.g.edge_id(v, w).expect("adjacency and edge list agree");
            if self.oriented[id] {
                continue;
            }
            self.oriented[id] = true;
            self.dir[id] = (v, w);
            self.out[v].push(id);
            self.lowpt[id] = self.height[v];
            self.lowpt2[id] = self.height[v];
            if self.height[w] == NONE {
                self.parent_edge[w] = id;
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[id] = self.height[w];
            }

            self.nesting[id] = 2 * self.lowpt[id];
            if self.lowpt2[id] < self.height[v] {
                // chordal
                self.nesting[id] += 1;
            }

            if e != NONE {
                if self.lowpt[id] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[id]);
                    self.lowpt[e] = self.lowpt[id];
                } else if self.lowpt[id] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[id]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[id]);
                }
            }
        }
    }

    fn test(&mut self, v: Node) -> bool {
        let e = self.parent_edge[v];
        let out = std::mem::take(&mut self.out[v]);
        for (idx, &ei) in out.iter().enumerate() {
            let w = self.dir[ei].1;
            self.stack_bottom[ei] = self.stack.len();
            if ei == self.parent_edge[w] {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = ei;
                self.stack.push(ConflictPair {
                    left: Interval::EMPTY,
                    right: Interval { low: ei, high: ei },
                });
            }

            if self.lowpt[ei] < self.height[v] {
                if idx == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        self.out[v] = out;
        if e != NONE {
            self.remove_back_edges(e);
        }
        true
    }

    fn conflicting(&self, iv: &Interval, b: usize) -> bool {
        !iv.is_empty() && self.lowpt[iv.high] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low];
        }
        self.lowpt[p.left.low].min(self.lowpt[p.right.low])
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair {
            left: Interval::EMPTY,
            right: Interval::EMPTY,
        };
        // merge return edges of ei into p.right
        loop {
            let mut q = self.stack.pop().expect("return edges of ei are on the stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt[q.right.low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.refs[p.right.low] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.refs[q.right.low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // merge conflicting return edges of earlier siblings into p.left
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if p.right.low != NONE {
                self.refs[p.right.low] = q.right.high;
            }
            if q.right.low != NONE {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if p.left.low != NONE {
                self.refs[p.left.low] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.dir[e].0;
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while p.left.high != NONE && self.dir[p.left.high].1 == u {
                p.left.high = self.refs[p.left.high];
            }
            if p.left.high == NONE && p.left.low != NONE {
                self.refs[p.left.low] = p.right.low;
                p.left.low = NONE;
            }
            while p.right.high != NONE && self.dir[p.right.high].1 == u {
                p.right.high = self.refs[p.right.high];
            }
            if p.right.high == NONE && p.right.low != NONE {
                self.refs[p.right.low] = p.left.low;
                p.right.low = NONE;
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("e has a return edge");
            let (hl, hr) = (top.left.high, top.right.high);
            self.refs[e] = if hl != NONE && (hr == NONE || self.lowpt[hl] > self.lowpt[hr]) {
                hl
            } else {
                hr
            };
        }
    }
}
