use std::fmt;

use super::ReduceError;
use crate::classes::ClassDescriptor;
use crate::graph::{Graph, NodeSet};
use crate::solver::{
    decide_with_meter, greedy_independent_set, independent_set_atleast, verify_partition, Budget,
    Certificate, EdgePartition, Meter, SolveError,
};

/// How edge-maximality of a gadget is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Maximality {
    /// Every non-edge was re-checked by the exact solver.
    Verified,
    /// Claimed by the producer (e.g. a gadget read back from a file).
    Assumed,
    /// Not claimed. Such a gadget only supports forward certificates.
    None,
}

impl fmt::Display for Maximality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Maximality::Verified => "verified",
            Maximality::Assumed => "assumed",
            Maximality::None => "none",
        })
    }
}

/// Auxiliary graph `h` with a witness partition into `k` parts and an
/// independent set whose nodes serve as connector targets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetGraph {
    pub h: Graph,
    pub k: usize,
    pub class: &'static str,
    pub witness: EdgePartition,
    pub indep: NodeSet,
    pub maximality: Maximality,
    /// Set when `h` is edge-maximal and not complete, which forces its
    /// thickness to be exactly `k`.
    pub thickness_is_k: bool,
}

impl GadgetGraph {
    /// Edgeless gadget on `nodes` nodes, all of them independent.
    pub fn relaxed(nodes: usize, f: &ClassDescriptor, k: usize) -> GadgetGraph {
        let h = Graph::empty(nodes);
        GadgetGraph {
            witness: EdgePartition::new(&h, k, Vec::new()).unwrap(),
            indep: NodeSet::new(0..nodes),
            h,
            k,
            class: f.name,
            maximality: Maximality::None,
            thickness_is_k: false,
        }
    }

    /// A gadget supplied by the caller. The witness partition and the
    /// independent set are checked; maximality is taken as given.
    pub fn custom(
        h: Graph,
        f: &ClassDescriptor,
        witness: EdgePartition,
        indep: NodeSet,
        maximality: Maximality,
    ) -> Result<GadgetGraph, ReduceError> {
        if verify_partition(&h, f, &witness)? != true {
            return Err(ReduceError::InvalidGadget(
                "witness partition has a part outside the class".into(),
            ));
        }
        if !indep.is_independent_in(&h) || indep.iter().any(|v| v >= h.n()) {
            return Err(ReduceError::InvalidGadget("node set is not independent".into()));
        }
        let complete = h.m() == h.n() * h.n().saturating_sub(1) / 2;
        Ok(GadgetGraph {
            k: witness.k(),
            class: f.name,
            thickness_is_k: maximality != Maximality::None && !complete,
            h,
            witness,
            indep,
            maximality,
        })
    }
}

/// Greedy edge-maximal gadget on `c` nodes.
///
/// Non-edges of the edgeless graph are tried in lexicographic order; an
/// edge is kept iff the graph with it still splits into `k` parts of `f`.
/// For a monotone class a rejected edge can never become acceptable later,
/// so one pass gives an edge-maximal graph; a second pass over the final
/// non-edges re-checks this with the solver. All solver calls share
/// `budget`.
pub fn build_gadget(
    c: usize,
    f: &ClassDescriptor,
    k: usize,
    target_indep: usize,
    budget: &Budget,
    threads: usize,
) -> Result<GadgetGraph, ReduceError> {
    if !f.monotone {
        return Err(ReduceError::NotMonotone { class: f.name });
    }
    if c < 3 {
        return Err(ReduceError::GadgetTooSmall { c });
    }
    let meter = Meter::new(budget);
    let mut h = Graph::empty(c);
    let mut witness = EdgePartition::new(&h, k, Vec::new()).unwrap();
    for (u, v) in h.non_edges() {
        let cand = h.with_edge(u, v)?;
        let r = decide_with_meter(&cand, f, k, &meter, threads)?;
        if let Some(Certificate::Partition(p)) = r.certificate {
            h = cand;
            witness = p;
        }
    }
    for (u, v) in h.non_edges() {
        let cand = h.with_edge(u, v)?;
        if decide_with_meter(&cand, f, k, &meter, threads)?.is_yes() {
            return Err(ReduceError::RescanFailed { u, v });
        }
    }
    let indep = match independent_set_atleast(&h, target_indep, budget)? {
        Some(s) => s,
        None => {
            return Err(ReduceError::IndependenceShort {
                target: target_indep,
                achieved: greedy_independent_set(&h).len(),
            })
        }
    };
    let complete = h.m() == c * (c - 1) / 2;
    Ok(GadgetGraph {
        h,
        k,
        class: f.name,
        witness,
        indep,
        maximality: Maximality::Verified,
        thickness_is_k: !complete,
    })
}

impl From<SolveError> for ReduceError {
    fn from(e: SolveError) -> Self {
        ReduceError::Solve(e)
    }
}
