//! Branch and bound for "can E(G) be split into k parts, each in F?".
//!
//! Edges are assigned in a fixed order (descending endpoint-degree sum, ties
//! by edge id). Three prunes apply:
//!
//! * membership: for monotone classes a part that left F never comes back;
//! * density: the parts' remaining edge capacity must cover the edges left;
//! * symmetry: an edge may open part `j` only if part `j - 1` is in use.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use super::budget::Stop;
use super::{
    verify_partition, Certificate, Decision, EdgePartition, Meter, SolveError, SolveResult,
    SolverConfig, Stats,
};
use crate::classes::ClassDescriptor;
use crate::graph::{EdgeId, Graph, Node};

/// Exact decision of `theta_F(g) <= k`.
pub fn thickness_decide(
    g: &Graph,
    f: &ClassDescriptor,
    k: usize,
    cfg: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    let meter = Meter::new(&cfg.budget);
    decide_with_meter(g, f, k, &meter, cfg.threads)
}

/// Smallest `k` with a valid partition, and the partition found for it.
pub fn thickness_exact(
    g: &Graph,
    f: &ClassDescriptor,
    cfg: &SolverConfig,
) -> Result<(usize, EdgePartition), SolveError> {
    if g.m() == 0 {
        return Ok((0, EdgePartition::new(g, 0, Vec::new())?));
    }
    let (u, v) = g.edge(0);
    let single = Graph::new(g.n(), [(u, v)]).expect("edge of g");
    if !f.contains(&single) {
        return Err(SolveError::Uncoverable { class: f.name });
    }
    let lower = match f.edge_capacity(g.n()) {
        Some(cap) if cap > 0 => g.m().div_ceil(cap),
        _ => 1,
    };
    let meter = Meter::new(&cfg.budget);
    for k in lower.max(1)..=g.m() {
        let res = decide_with_meter(g, f, k, &meter, cfg.threads)?;
        if let Some(Certificate::Partition(p)) = res.certificate {
            return Ok((k, p));
        }
    }
    unreachable!("one edge per part is always a valid partition here")
}

pub(crate) fn decide_with_meter(
    g: &Graph,
    f: &ClassDescriptor,
    k: usize,
    meter: &Meter,
    threads: usize,
) -> Result<SolveResult, SolveError> {
    if k == 0 {
        let decision = if g.m() == 0 { Decision::Yes } else { Decision::No };
        let certificate = (g.m() == 0)
            .then(|| Certificate::Partition(EdgePartition::new(g, 0, Vec::new()).unwrap()));
        return Ok(SolveResult {
            decision,
            certificate,
            stats: Stats::default(),
        });
    }
    let before = meter.nodes();
    let mut search = Search::new(g, f, k, meter.clone());
    let outcome = if threads > 1 && g.m() > 8 {
        search.run_parallel(threads)
    } else {
        search.run(0).map(|found| found.then(|| search.assign.clone()))
    };
    let mut stats = search.stats.clone();
    stats.nodes_expanded = meter.nodes() - before;
    stats.elapsed = meter.elapsed();
    match outcome {
        Err(_) => {
            // report the whole shared budget, not just this call
            stats.nodes_expanded = meter.nodes();
            Err(SolveError::BudgetExceeded(stats))
        }
        Ok(None) => Ok(SolveResult {
            decision: Decision::No,
            certificate: None,
            stats,
        }),
        Ok(Some(assign)) => {
            let p = EdgePartition::new(g, k, assign)?;
            debug_assert_eq!(verify_partition(g, f, &p), Ok(true));
            if threads > 1 && verify_partition(g, f, &p) != Ok(true) {
                return Err(SolveError::InvalidCertificate(
                    "parallel search produced an invalid partition".into(),
                ));
            }
            Ok(SolveResult {
                decision: Decision::Yes,
                certificate: Some(Certificate::Partition(p)),
                stats,
            })
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    f: &'a ClassDescriptor,
    k: usize,
    order: Vec<EdgeId>,
    capacity: Option<usize>,
    empty_ok: bool,
    parts: Vec<Vec<(Node, Node)>>,
    /// Edge-id bitmask of each part, kept only when `m <= 128`.
    masks: Vec<u128>,
    memo: HashMap<u128, bool>,
    assign: Vec<usize>,
    stats: Stats,
    meter: Meter,
}

const MEMO_CAP: usize = 1 << 22;

impl<'a> Search<'a> {
    fn new(g: &'a Graph, f: &'a ClassDescriptor, k: usize, meter: Meter) -> Self {
        let weight = |e: EdgeId| {
            let (u, v) = g.edge(e);
            g.degree(u) + g.degree(v)
        };
        let mut order: Vec<EdgeId> = (0..g.m()).collect();
        order.sort_by_key(|&e| (std::cmp::Reverse(weight(e)), e));
        Search {
            g,
            f,
            k,
            order,
            capacity: f.edge_capacity(g.n()),
            empty_ok: f.contains(&Graph::empty(g.n())),
            parts: vec![Vec::new(); k],
            masks: vec![0; k],
            memo: HashMap::new(),
            assign: vec![usize::MAX; g.m()],
            stats: Stats::default(),
            meter,
        }
    }

    fn part_in_class(&mut self, j: usize) -> bool {
        let memoize = self.g.m() <= 128;
        if memoize {
            if let Some(&hit) = self.memo.get(&self.masks[j]) {
                return hit;
            }
        }
        let part = Graph::from_pairs_unchecked(self.g.n(), self.parts[j].clone());
        let ok = self.f.contains(&part);
        if memoize {
            if self.memo.len() >= MEMO_CAP {
                self.memo.clear();
            }
            self.memo.insert(self.masks[j], ok);
        }
        ok
    }

    fn push(&mut self, j: usize, e: EdgeId) {
        self.parts[j].push(self.g.edge(e));
        if e < 128 {
            self.masks[j] |= 1 << e;
        }
    }

    fn pop(&mut self, j: usize, e: EdgeId) {
        self.parts[j].pop();
        if e < 128 {
            self.masks[j] &= !(1 << e);
        }
    }

    fn complete_ok(&mut self) -> bool {
        (0..self.k).all(|j| {
            if self.parts[j].is_empty() {
                self.empty_ok
            } else {
                self.f.monotone || self.part_in_class(j)
            }
        })
    }

    fn density_fails(&self, idx: usize) -> bool {
        let Some(cap) = self.capacity else {
            return false;
        };
        let room: usize = self.parts.iter().map(|p| cap.saturating_sub(p.len())).sum();
        room < self.order.len() - idx
    }

    /// Parts edge `order[idx]` may go into, after the symmetry rule.
    fn choices(&self) -> usize {
        let opened = self.parts.iter().take_while(|p| !p.is_empty()).count();
        (opened + 1).min(self.k)
    }

    fn try_place(&mut self, idx: usize, j: usize) -> bool {
        let e = self.order[idx];
        self.push(j, e);
        if self.f.monotone && !self.part_in_class(j) {
            self.pop(j, e);
            self.stats.membership_prunes += 1;
            return false;
        }
        self.assign[e] = j;
        true
    }

    fn run(&mut self, idx: usize) -> Result<bool, Stop> {
        self.meter.tick()?;
        if idx == self.order.len() {
            return Ok(self.complete_ok());
        }
        if self.density_fails(idx) {
            self.stats.density_prunes += 1;
            return Ok(false);
        }
        for j in 0..self.choices() {
            if !self.try_place(idx, j) {
                continue;
            }
            if self.run(idx + 1)? {
                return Ok(true);
            }
            self.pop(j, self.order[idx]);
        }
        Ok(false)
    }

    /// All surviving assignments of the first `depth` edges, in DFS order.
    fn prefixes(&mut self, idx: usize, depth: usize, out: &mut Vec<Vec<usize>>) {
        if idx == depth {
            out.push(self.order[..depth].iter().map(|&e| self.assign[e]).collect());
            return;
        }
        if self.density_fails(idx) {
            return;
        }
        for j in 0..self.choices() {
            if self.try_place(idx, j) {
                self.prefixes(idx + 1, depth, out);
                self.pop(j, self.order[idx]);
            }
        }
    }

    fn load_prefix(&mut self, prefix: &[usize]) {
        for (idx, &j) in prefix.iter().enumerate() {
            let e = self.order[idx];
            self.push(j, e);
            self.assign[e] = j;
        }
    }

    /// Splits the tree at a shallow depth and searches the subtrees on a
    /// rayon pool. The lowest-index successful subtree wins, which is the
    /// witness the sequential search would have found.
    fn run_parallel(&mut self, threads: usize) -> Result<Option<Vec<usize>>, Stop> {
        let m = self.order.len();
        let mut depth = 1;
        let mut tasks = Vec::new();
        while depth <= m {
            tasks.clear();
            self.prefixes(0, depth, &mut tasks);
            if tasks.len() >= 8 * threads || depth == m {
                break;
            }
            depth += 1;
        }

        let best = Arc::new(AtomicUsize::new(usize::MAX));
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        let (g, f, k) = (self.g, self.f, self.k);
        let base = self.meter.clone();
        let results: Vec<(Result<Option<Vec<usize>>, Stop>, Stats)> = pool.install(|| {
            tasks
                .par_iter()
                .enumerate()
                .map(|(i, prefix)| {
                    if best.load(Ordering::Relaxed) < i {
                        return (Err(Stop::Cancelled), Stats::default());
                    }
                    let mut s = Search::new(g, f, k, base.for_task(best.clone(), i));
                    s.load_prefix(prefix);
                    let r = s.run(prefix.len()).map(|found| {
                        found.then(|| {
                            best.fetch_min(i, Ordering::Relaxed);
                            s.assign.clone()
                        })
                    });
                    (r, s.stats)
                })
                .collect()
        });

        let mut exhausted = false;
        for (r, st) in &results {
            self.stats.membership_prunes += st.membership_prunes;
            self.stats.density_prunes += st.density_prunes;
            if *r == Err(Stop::Exhausted) {
                exhausted = true;
            }
        }
        if let Some((Ok(Some(a)), _)) = results.iter().find(|(r, _)| matches!(r, Ok(Some(_)))) {
            return Ok(Some(a.clone()));
        }
        if exhausted {
            return Err(Stop::Exhausted);
        }
        Ok(None)
    }
}
