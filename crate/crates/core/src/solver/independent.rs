use super::budget::Stop;
use super::{Budget, Meter, SolveError, Stats};
use crate::graph::{Graph, Node, NodeSet};

/// Repeatedly takes a node of minimum remaining degree (lowest id on ties)
/// and deletes its closed neighbourhood. The result always has at least
/// `ceil(n^2 / (n + 2m))` nodes.
pub fn greedy_independent_set(g: &Graph) -> NodeSet {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut out = Vec::new();
    loop {
        let Some(v) = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (deg[v], v)) else {
            break;
        };
        out.push(v);
        let mut removed = vec![v];
        removed.extend(g.neighbors(v).iter().copied().filter(|&w| alive[w]));
        for &r in &removed {
            alive[r] = false;
        }
        for &r in &removed {
            for &w in g.neighbors(r) {
                if alive[w] {
                    deg[w] -= 1;
                }
            }
        }
    }
    NodeSet::new(out)
}

/// An independent set of size at least `target`, or `None` when none exists.
/// Tries the greedy set first and then an exact search under `budget`.
pub fn independent_set_atleast(
    g: &Graph,
    target: usize,
    budget: &Budget,
) -> Result<Option<NodeSet>, SolveError> {
    let greedy = greedy_independent_set(g);
    if greedy.len() >= target {
        return Ok(Some(greedy));
    }
    let meter = Meter::new(budget);
    let mut s = Search {
        g,
        target,
        chosen: Vec::new(),
        meter: &meter,
    };
    let candidates: Vec<Node> = (0..g.n()).collect();
    match s.run(candidates) {
        Ok(true) => Ok(Some(NodeSet::new(s.chosen))),
        Ok(false) => Ok(None),
        Err(_) => Err(SolveError::BudgetExceeded(Stats {
            nodes_expanded: meter.nodes(),
            elapsed: meter.elapsed(),
            ..Stats::default()
        })),
    }
}

struct Search<'a> {
    g: &'a Graph,
    target: usize,
    chosen: Vec<Node>,
    meter: &'a Meter,
}

impl Search<'_> {
    fn run(&mut self, candidates: Vec<Node>) -> Result<bool, Stop> {
        self.meter.tick()?;
        if self.chosen.len() >= self.target {
            return Ok(true);
        }
        if self.chosen.len() + candidates.len() < self.target {
            return Ok(false);
        }
        // branch on a candidate of maximum degree within the candidates:
        // either it is in the set, or it is not
        let deg_in = |v: Node| {
            self.g
                .neighbors(v)
                .iter()
                .filter(|w| candidates.binary_search(w).is_ok())
                .count()
        };
        let v = *candidates.iter().max_by_key(|&&v| (deg_in(v), usize::MAX - v)).unwrap();
        if deg_in(v) == 0 {
            // all remaining candidates are pairwise non-adjacent
            let need = self.target - self.chosen.len();
            self.chosen.extend(candidates.iter().take(need));
            return Ok(true);
        }
        let with: Vec<Node> = candidates
            .iter()
            .copied()
            .filter(|&w| w != v && !self.g.has_edge(v, w))
            .collect();
        self.chosen.push(v);
        if self.run(with)? {
            return Ok(true);
        }
        self.chosen.pop();
        let without: Vec<Node> = candidates.into_iter().filter(|&w| w != v).collect();
        self.run(without)
    }
}
