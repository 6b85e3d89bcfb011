use super::budget::Stop;
use super::{Certificate, Decision, EdgeColoring, Meter, SolveError, SolveResult, SolverConfig, Stats};
use crate::graph::Graph;

/// Decides whether `g` has a proper edge coloring with `k` colors.
///
/// Edges are colored in id order; an edge may use a fresh color only if it
/// is the lowest unused one.
pub fn edge_color_decide(
    g: &Graph,
    k: usize,
    cfg: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    let meter = Meter::new(&cfg.budget);
    decide(g, k, &meter)
}

/// Smallest `k` with a proper `k`-edge-coloring, and one such coloring.
pub fn chromatic_index(g: &Graph, cfg: &SolverConfig) -> Result<(usize, EdgeColoring), SolveError> {
    let meter = Meter::new(&cfg.budget);
    for k in g.max_degree().. {
        let r = decide(g, k, &meter)?;
        if let Some(Certificate::Coloring(c)) = r.certificate {
            return Ok((k, c));
        }
    }
    unreachable!()
}

/// All proper `k`-edge-colorings of `g`, as distinct maps (colors are not
/// identified up to renaming), stopping after `limit`.
pub fn enumerate_colorings(g: &Graph, k: usize, limit: usize) -> Vec<EdgeColoring> {
    let mut out = Vec::new();
    let mut color = vec![0; g.m()];
    let mut used = vec![0u64; g.n()];
    if k <= 64 {
        enumerate(g, k, 0, &mut color, &mut used, limit, &mut out);
    }
    out
}

fn enumerate(
    g: &Graph,
    k: usize,
    e: usize,
    color: &mut Vec<usize>,
    used: &mut Vec<u64>,
    limit: usize,
    out: &mut Vec<EdgeColoring>,
) {
    if out.len() >= limit {
        return;
    }
    if e == g.m() {
        out.push(EdgeColoring::new(g, k, color.clone()).unwrap());
        return;
    }
    let (u, v) = g.edge(e);
    for c in 0..k {
        let bit = 1u64 << c;
        if (used[u] | used[v]) & bit != 0 {
            continue;
        }
        used[u] |= bit;
        used[v] |= bit;
        color[e] = c;
        enumerate(g, k, e + 1, color, used, limit, out);
        used[u] &= !bit;
        used[v] &= !bit;
    }
}

fn decide(g: &Graph, k: usize, meter: &Meter) -> Result<SolveResult, SolveError> {
    let before = meter.nodes();
    let mut s = ColorSearch {
        g,
        k,
        color: vec![0; g.m()],
        used: vec![0; g.n()],
        meter,
    };
    let delta = g.max_degree();
    let greedy = k + 1 >= 2 * delta;
    let found = if delta > k {
        Ok(false)
    } else if greedy {
        // first-fit never needs more than 2*delta - 1 colors
        Ok(true)
    } else if k > 64 {
        return Err(SolveError::InvalidCertificate(
            "more than 64 colors is not supported".into(),
        ));
    } else {
        s.run(0, 0)
    };
    let mut stats = Stats {
        nodes_expanded: meter.nodes() - before,
        elapsed: meter.elapsed(),
        ..Stats::default()
    };
    match found {
        Err(_) => {
            stats.nodes_expanded = meter.nodes();
            Err(SolveError::BudgetExceeded(stats))
        }
        Ok(false) => Ok(SolveResult {
            decision: Decision::No,
            certificate: None,
            stats,
        }),
        Ok(true) => {
            let color = if greedy { first_fit(g) } else { s.color };
            Ok(SolveResult {
                decision: Decision::Yes,
                certificate: Some(Certificate::Coloring(EdgeColoring::new(g, k, color)?)),
                stats,
            })
        }
    }
}

fn first_fit(g: &Graph) -> Vec<usize> {
    let mut color = vec![0; g.m()];
    for e in 0..g.m() {
        let (u, v) = g.edge(e);
        let taken: Vec<usize> = (0..e)
            .filter(|&f| {
                let (a, b) = g.edge(f);
                a == u || a == v || b == u || b == v
            })
            .map(|f| color[f])
            .collect();
        color[e] = (0..).find(|c| !taken.contains(c)).unwrap();
    }
    color
}

struct ColorSearch<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<usize>,
    used: Vec<u64>,
    meter: &'a Meter,
}

impl ColorSearch<'_> {
    fn run(&mut self, e: usize, opened: usize) -> Result<bool, Stop> {
        self.meter.tick()?;
        if e == self.g.m() {
            return Ok(true);
        }
        let (u, v) = self.g.edge(e);
        for c in 0..(opened + 1).min(self.k) {
            let bit = 1u64 << c;
            if (self.used[u] | self.used[v]) & bit != 0 {
                continue;
            }
            self.used[u] |= bit;
            self.used[v] |= bit;
            self.color[e] = c;
            if self.run(e + 1, opened.max(c + 1))? {
                return Ok(true);
            }
            self.used[u] &= !bit;
            self.used[v] &= !bit;
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;
    use crate::solver::{verify_coloring, Budget};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn index(g: &Graph) -> usize {
        let (k, c) = chromatic_index(g, &SolverConfig::default()).unwrap();
        assert_eq!(verify_coloring(g, &c), Ok(true));
        k
    }

    #[test]
    fn known_chromatic_indices() {
        assert_eq!(index(&complete(4)), 3);
        assert_eq!(index(&complete_bipartite(3, 3)), 3);
        assert_eq!(index(&cycle(5)), 3);
        assert_eq!(index(&cycle(6)), 2);
        assert_eq!(index(&petersen()), 4);
        assert_eq!(index(&complete(5)), 5);
        assert_eq!(index(&prism(3)), 3);
        assert_eq!(index(&Graph::empty(3)), 0);
    }

    #[test]
    fn enumeration_counts() {
        // the triangle: 3! maps with 3 colors, none with 2
        assert_eq!(enumerate_colorings(&cycle(3), 3, usize::MAX).len(), 6);
        assert!(enumerate_colorings(&cycle(3), 2, usize::MAX).is_empty());
        // K4 has one 1-factorization, so 3! labelled colorings
        assert_eq!(enumerate_colorings(&complete(4), 3, usize::MAX).len(), 6);
        // K_{3,3}: 12 Latin squares of order 3
        assert_eq!(enumerate_colorings(&complete_bipartite(3, 3), 3, usize::MAX).len(), 12);
        assert_eq!(enumerate_colorings(&complete(4), 3, 4).len(), 4);
    }

    #[test]
    fn budget_exhaustion_reported() {
        let cfg = SolverConfig::with_budget(Budget::nodes(5));
        assert!(matches!(
            edge_color_decide(&petersen(), 3, &cfg),
            Err(SolveError::BudgetExceeded(_))
        ));
    }

    #[test]
    fn bipartite_graphs_are_class_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let a = rng.gen_range(1..=4);
            let b = rng.gen_range(1..=4);
            let full = complete_bipartite(a, b);
            let keep: Vec<_> = (0..full.m()).filter(|_| rng.gen_bool(0.7)).collect();
            let es = EdgeSet::from_ids(&full, keep).unwrap();
            let g = subgraph(&full, &es).unwrap();
            assert_eq!(index(&g), g.max_degree());
        }
    }

    #[test]
    fn decision_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..40 {
            let n = rng.gen_range(2..=6);
            let g = random_gnp(n, 0.5, &mut rng);
            for k in 0..=4 {
                let yes = edge_color_decide(&g, k, &SolverConfig::default())
                    .unwrap()
                    .is_yes();
                assert_eq!(yes, !enumerate_colorings(&g, k, 1).is_empty());
            }
        }
    }
}
