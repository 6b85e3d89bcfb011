//! From a k-edge-coloring instance to an F-thickness instance, and back.
//!
//! The pipeline is [`label_short_paths`], [`build_gadget`] (or
//! [`GadgetGraph::relaxed`]), then [`assemble`]. [`forward_certificate`]
//! turns a coloring of the source into a partition of the reduced graph;
//! [`extract_coloring`] reads a coloring back out of any partition.

mod gadget;
mod instance;
mod labeling;
mod provenance;

use std::fmt;

use thiserror::Error;

use crate::classes::{ClassDescriptor, Condition, Density};
use crate::graph::{is_k_regular, EdgeId, Graph, GraphError, Node};
use crate::solver::{Budget, SolveError};

pub use gadget::{build_gadget, GadgetGraph, Maximality};
pub use instance::{
    assemble, extract_coloring, forward_certificate, EdgeOrigin, ReducedInstance, Side,
};
pub use labeling::{
    conflict_pairs, conflict_pairs_by_paths, label_bound, label_short_paths, labeling_violations,
    short_paths, Labeling,
};
pub use provenance::{parse_instance, render_provenance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("source graph is not {k}-regular")]
    NotRegular { k: usize },
    #[error("class {class} refused: {}", failed_list(.failed))]
    ConditionsFail {
        class: &'static str,
        failed: Vec<Condition>,
    },
    #[error("class {class} has no finite density bound")]
    UnboundedDensity { class: &'static str },
    #[error("class {class} is not closed under subgraphs; greedy gadgets need that")]
    NotMonotone { class: &'static str },
    #[error("gadget needs at least 3 nodes, got {c}")]
    GadgetTooSmall { c: usize },
    #[error("gadget independence number below target {target} (greedy found {achieved}); raise C")]
    IndependenceShort { target: usize, achieved: usize },
    #[error("{labels} labels but only {available} independent gadget nodes")]
    TooFewIndependent { labels: usize, available: usize },
    #[error("gadget re-scan accepted non-edge {{{u}, {v}}}")]
    RescanFailed { u: Node, v: Node },
    #[error("invalid gadget: {0}")]
    InvalidGadget(String),
    #[error("coloring or partition belongs to a different graph")]
    HostMismatch,
    #[error("expected {expected} parts, got {got}")]
    PartCountMismatch { expected: usize, got: usize },
    #[error("coloring is not proper: edges {e} and {f} share an endpoint and a color")]
    ImproperColoring { e: EdgeId, f: EdgeId },
    #[error("source path {}-{}-{} has both edges in part {part}", .path[0], .path[1], .path[2])]
    SharedPart { path: [Node; 3], part: usize },
    #[error("provenance line {line}: {msg}")]
    Provenance { line: usize, msg: String },
    #[error(transparent)]
    Solve(SolveError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn failed_list(failed: &[Condition]) -> String {
    failed
        .iter()
        .map(|c| format!("condition ({}) fails", c.letter()))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Gadget construction mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Edge-maximal gadget on `choose_c` nodes. Both directions hold.
    Paper,
    /// Edgeless gadget on `L` nodes. Only forward certificates are meaningful.
    Relaxed,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Paper => "paper",
            Mode::Relaxed => "relaxed",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Mode, String> {
        match s {
            "paper" => Ok(Mode::Paper),
            "relaxed" => Ok(Mode::Relaxed),
            _ => Err(format!("unknown mode {s:?}; expected paper or relaxed")),
        }
    }
}

/// Gadget size `floor((1 + 2kD) * labels) + 1` for density `D` of `f`.
///
/// At this size every member of `f` on `C` nodes has fewer than
/// `C(C,2) / k` edges, and the greedy independent set has at least `labels`
/// nodes. `labels` is raised to 1 when zero.
pub fn choose_c(labels: usize, f: &ClassDescriptor, k: usize) -> Result<usize, ReduceError> {
    let Density::Finite { num, den } = f.density else {
        return Err(ReduceError::UnboundedDensity { class: f.name });
    };
    let (num, den, k, l) = (num as u128, den as u128, k as u128, labels.max(1) as u128);
    let c = ((den + 2 * k * num) * l / den + 1) as usize;
    let pairs = (c * (c - 1) / 2) as u128;
    assert!(pairs * den > k * num * c as u128);
    if let Some(cap) = f.edge_capacity(c) {
        assert!(pairs > k * cap as u128);
    }
    Ok(c)
}

/// Full pipeline. The source must be `k`-regular and `f` must satisfy all
/// three conditions.
pub fn reduce(
    g: &Graph,
    f: &ClassDescriptor,
    k: usize,
    mode: Mode,
    budget: &Budget,
    threads: usize,
) -> Result<ReducedInstance, ReduceError> {
    let failed = f.failed_conditions();
    if !failed.is_empty() {
        return Err(ReduceError::ConditionsFail {
            class: f.name,
            failed,
        });
    }
    if !is_k_regular(g, k) {
        return Err(ReduceError::NotRegular { k });
    }
    let lab = label_short_paths(g, k);
    let gadget = match mode {
        Mode::Relaxed => GadgetGraph::relaxed(lab.count(), f, k),
        Mode::Paper => {
            let c = choose_c(lab.count(), f, k)?;
            build_gadget(c, f, k, lab.count(), budget, threads)?
        }
    };
    assemble(g, &lab, &gadget, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::builtin_descriptor;
    use crate::graph::*;
    use crate::solver::{enumerate_colorings, verify_partition, EdgeColoring, EdgePartition};
    use rand::{seq::SliceRandom, Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cls(name: &str) -> ClassDescriptor {
        builtin_descriptor(name).unwrap()
    }

    #[test]
    fn choose_c_values() {
        assert_eq!(choose_c(13, &cls("outerplanar"), 3).unwrap(), 170);
        assert_eq!(choose_c(6, &cls("outerplanar"), 3).unwrap(), 79);
        assert_eq!(choose_c(1, &cls("forest"), 3).unwrap(), 8);
        // D = 3/2: (1 + 9) * 6 + 1
        assert_eq!(choose_c(6, &cls("cactus"), 3).unwrap(), 61);
        assert!(matches!(
            choose_c(3, &cls("eulerian"), 3),
            Err(ReduceError::UnboundedDensity { .. })
        ));
    }

    #[test]
    fn refuses_classes_failing_conditions() {
        let k4 = complete(4);
        let err = reduce(&k4, &cls("forest"), 3, Mode::Relaxed, &Budget::default(), 1).unwrap_err();
        assert!(err.to_string().contains("condition (c) fails"), "{err}");
        let err = reduce(&k4, &cls("pseudoforest"), 3, Mode::Relaxed, &Budget::default(), 1)
            .unwrap_err();
        assert!(err.to_string().contains("condition (b) fails"));
        let err = reduce(&k4, &cls("eulerian"), 3, Mode::Relaxed, &Budget::default(), 1).unwrap_err();
        assert!(err.to_string().contains("condition (a) fails"));
        assert_eq!(
            reduce(&cycle(4), &cls("outerplanar"), 3, Mode::Relaxed, &Budget::default(), 1),
            Err(ReduceError::NotRegular { k: 3 })
        );
    }

    #[test]
    fn paper_mode_on_k4_runs_out_of_budget() {
        let err = reduce(
            &complete(4),
            &cls("outerplanar"),
            3,
            Mode::Paper,
            &Budget::nodes(20_000),
            1,
        )
        .unwrap_err();
        assert!(matches!(err, ReduceError::Solve(SolveError::BudgetExceeded(_))));
    }

    #[test]
    fn relaxed_k4_counts() {
        let inst = reduce(&complete(4), &cls("outerplanar"), 3, Mode::Relaxed, &Budget::default(), 1)
            .unwrap();
        assert_eq!(inst.gprime.n(), 4 + 6);
        assert_eq!(inst.gprime.m(), 6 + 12);
        assert_eq!(inst.w, (4..10).collect::<Vec<_>>());
        let connectors = inst
            .edge_origin
            .iter()
            .filter(|o| matches!(o, EdgeOrigin::Connector { .. }))
            .count();
        assert_eq!(connectors, 12);
    }

    #[test]
    fn single_edge_gives_one_triangle() {
        let g = path(2);
        let lab = label_short_paths(&g, 1);
        let gadget = GadgetGraph::relaxed(1, &cls("outerplanar"), 3);
        let inst = assemble(&g, &lab, &gadget, Mode::Relaxed).unwrap();
        assert!(is_isomorphic(&inst.gprime, &cycle(3)));
        let c = EdgeColoring::new(&g, 3, vec![1]).unwrap();
        let p = forward_certificate(&c, &inst).unwrap();
        assert_eq!(verify_partition(&inst.gprime, &cls("outerplanar"), &p), Ok(true));
        assert_eq!(p.part_edges(1).len(), 3);
    }

    #[test]
    fn two_disjoint_edges_share_a_connector() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let lab = label_short_paths(&g, 1);
        assert_eq!(lab.count(), 1);
        let gadget = GadgetGraph::relaxed(1, &cls("outerplanar"), 3);
        let inst = assemble(&g, &lab, &gadget, Mode::Relaxed).unwrap();
        let c = EdgeColoring::new(&g, 3, vec![0, 0]).unwrap();
        let p = forward_certificate(&c, &inst).unwrap();
        let part = p.part_graph(&inst.gprime, 0).unwrap();
        for name in ["outerplanar", "cactus", "planar"] {
            assert!(cls(name).contains(&part));
        }
        assert!(!cls("pseudoforest").contains(&part));
    }

    #[test]
    fn forward_and_back_on_small_cubic_graphs() {
        for g in [complete(4), complete_bipartite(3, 3), prism(3)] {
            let colorings = enumerate_colorings(&g, 3, usize::MAX);
            assert!(!colorings.is_empty());
            for name in ["outerplanar", "cactus", "planar", "partial-2-tree"] {
                let f = cls(name);
                let inst = reduce(&g, &f, 3, Mode::Relaxed, &Budget::default(), 1).unwrap();
                for c in &colorings {
                    let p = forward_certificate(c, &inst).unwrap();
                    assert_eq!(verify_partition(&inst.gprime, &f, &p), Ok(true));
                    assert_eq!(&extract_coloring(&p, &inst).unwrap(), c);
                }
            }
        }
    }

    #[test]
    fn permuted_parts_recover_a_permuted_coloring() {
        let g = complete(4);
        let inst = reduce(&g, &cls("outerplanar"), 3, Mode::Relaxed, &Budget::default(), 1).unwrap();
        let c = enumerate_colorings(&g, 3, 1).remove(0);
        let p = forward_certificate(&c, &inst).unwrap();
        let perm = [2, 0, 1];
        let q = EdgePartition::new(
            &inst.gprime,
            3,
            p.assignment().iter().map(|&i| perm[i]).collect(),
        )
        .unwrap();
        let back = extract_coloring(&q, &inst).unwrap();
        for e in 0..g.m() {
            assert_eq!(back.color(e), perm[c.color(e)]);
        }
    }

    #[test]
    fn extraction_names_a_shared_path() {
        let g = complete(4);
        let inst = reduce(&g, &cls("outerplanar"), 3, Mode::Relaxed, &Budget::default(), 1).unwrap();
        let p = EdgePartition::new(&inst.gprime, 3, vec![0; inst.gprime.m()]).unwrap();
        match extract_coloring(&p, &inst) {
            Err(ReduceError::SharedPart { path, part }) => {
                assert_eq!(part, 1);
                assert!(g.has_edge(path[0], path[1]) && g.has_edge(path[1], path[2]));
            }
            other => panic!("{other:?}"),
        }
        let bad = EdgeColoring::new(&g, 3, vec![0; 6]).unwrap();
        assert!(matches!(
            forward_certificate(&bad, &inst),
            Err(ReduceError::ImproperColoring { .. })
        ));
    }

    #[test]
    fn forward_direction_on_random_cubic_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut checked = 0;
        while checked < 12 {
            let n = 2 * rng.gen_range(2..=7);
            let Some(g) = random_regular(n, 3, &mut rng) else { continue };
            let mut colorings = enumerate_colorings(&g, 3, 200);
            if colorings.is_empty() {
                continue;
            }
            colorings.shuffle(&mut rng);
            for name in ["outerplanar", "cactus", "planar", "partial-2-tree"] {
                let f = cls(name);
                let inst = reduce(&g, &f, 3, Mode::Relaxed, &Budget::default(), 1).unwrap();
                for c in colorings.iter().take(5) {
                    let p = forward_certificate(c, &inst).unwrap();
                    assert_eq!(verify_partition(&inst.gprime, &f, &p), Ok(true));
                }
            }
            checked += 1;
        }
    }

    #[test]
    fn paper_mode_with_small_gadget_round_trips() {
        // one source edge, k = 1: a verified gadget on 4 nodes suffices
        let g = path(2);
        let f = cls("outerplanar");
        let lab = label_short_paths(&g, 1);
        let gadget = build_gadget(4, &f, 1, 1, &Budget::default(), 1).unwrap();
        let inst = assemble(&g, &lab, &gadget, Mode::Paper).unwrap();
        let c = EdgeColoring::new(&g, 1, vec![0]).unwrap();
        let p = forward_certificate(&c, &inst).unwrap();
        assert_eq!(verify_partition(&inst.gprime, &f, &p), Ok(true));
        assert_eq!(extract_coloring(&p, &inst).unwrap(), c);
    }
}
