//! Exact decision procedures: F-thickness by branch and bound with an
//! exhaustive oracle beside it, k-edge-coloring, and independent sets.

mod budget;
mod coloring;
mod independent;
mod oracle;
mod report;
mod thickness;

use std::fmt;
use std::time::Duration;

use serde::Serialize;
use thiserror::Error;

use crate::classes::ClassDescriptor;
use crate::graph::{subgraph, EdgeId, EdgeSet, Graph, HostId};

pub use budget::Budget;
pub(crate) use budget::Meter;
pub use coloring::{chromatic_index, edge_color_decide, enumerate_colorings};
pub use independent::{greedy_independent_set, independent_set_atleast};
pub use oracle::{thickness_oracle, thickness_oracle_with_limit, ORACLE_ASSIGNMENT_LIMIT};
pub use report::{parse_partition, render_partition, render_result};
pub use thickness::{thickness_decide, thickness_exact};
pub(crate) use thickness::decide_with_meter;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("search budget exceeded after {} nodes", .0.nodes_expanded)]
    BudgetExceeded(Stats),
    #[error("exhaustive oracle needs {assignments} assignments, limit is {limit}")]
    OracleGuard { assignments: u128, limit: u128 },
    #[error("certificate belongs to a different host graph")]
    HostMismatch,
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("class {class} does not contain the single-edge graph; no partition exists")]
    Uncoverable { class: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Yes => "yes",
            Decision::No => "no",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub nodes_expanded: u64,
    pub membership_prunes: u64,
    pub density_prunes: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Assignment of every edge of a host graph to one of `k` parts.
/// Parts are numbered `0..k` in memory and `1..=k` in text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePartition {
    host: HostId,
    k: usize,
    assign: Vec<usize>,
}

impl EdgePartition {
    pub fn new(host: &Graph, k: usize, assign: Vec<usize>) -> Result<Self, SolveError> {
        if assign.len() != host.m() {
            return Err(SolveError::InvalidCertificate(format!(
                "{} assignments for {} edges",
                assign.len(),
                host.m()
            )));
        }
        if let Some(&bad) = assign.iter().find(|&&p| p >= k) {
            return Err(SolveError::InvalidCertificate(format!(
                "part {} out of range 1..={k}",
                bad + 1
            )));
        }
        Ok(EdgePartition {
            host: host.host_id(),
            k,
            assign,
        })
    }

    pub fn host(&self) -> HostId {
        self.host
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn part_of(&self, e: EdgeId) -> usize {
        self.assign[e]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assign
    }

    pub fn part_edges(&self, part: usize) -> Vec<EdgeId> {
        (0..self.assign.len())
            .filter(|&e| self.assign[e] == part)
            .collect()
    }

    pub fn part_set(&self, host: &Graph, part: usize) -> Result<EdgeSet, SolveError> {
        if host.host_id() != self.host {
            return Err(SolveError::HostMismatch);
        }
        EdgeSet::from_ids(host, self.part_edges(part)).map_err(|_| SolveError::HostMismatch)
    }

    /// Spanning subgraph `(V(host), E_part)`.
    pub fn part_graph(&self, host: &Graph, part: usize) -> Result<Graph, SolveError> {
        let set = self.part_set(host, part)?;
        subgraph(host, &set).map_err(|_| SolveError::HostMismatch)
    }
}

/// A map from edges to `k` colors (`0..k`), not necessarily proper.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    host: HostId,
    k: usize,
    color: Vec<usize>,
}

impl EdgeColoring {
    pub fn new(host: &Graph, k: usize, color: Vec<usize>) -> Result<Self, SolveError> {
        let p = EdgePartition::new(host, k, color)?;
        Ok(EdgeColoring {
            host: p.host,
            k,
            color: p.assign,
        })
    }

    pub fn host(&self) -> HostId {
        self.host
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn color(&self, e: EdgeId) -> usize {
        self.color[e]
    }

    pub fn colors(&self) -> &[usize] {
        &self.color
    }

    /// Two edges sharing an endpoint with the same color, if any.
    pub fn conflict(&self, g: &Graph) -> Option<(EdgeId, EdgeId)> {
        for v in 0..g.n() {
            let nb = g.neighbors(v);
            for (i, &a) in nb.iter().enumerate() {
                let ea = g.edge_id(v, a).unwrap();
                for &b in &nb[i + 1..] {
                    let eb = g.edge_id(v, b).unwrap();
                    if self.color[ea] == self.color[eb] {
                        return Some((ea.min(eb), ea.max(eb)));
                    }
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Partition(EdgePartition),
    Coloring(EdgeColoring),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub decision: Decision,
    pub certificate: Option<Certificate>,
    pub stats: Stats,
}

impl SolveResult {
    pub fn is_yes(&self) -> bool {
        self.decision == Decision::Yes
    }

    pub fn partition(&self) -> Option<&EdgePartition> {
        match &self.certificate {
            Some(Certificate::Partition(p)) => Some(p),
            _ => None,
        }
    }

    pub fn coloring(&self) -> Option<&EdgeColoring> {
        match &self.certificate {
            Some(Certificate::Coloring(c)) => Some(c),
            _ => None,
        }
    }
}

/// Solver settings shared by the decision procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub budget: Budget,
    /// Worker threads for the decision search. Certificates stay identical
    /// to the single-threaded run whenever the search finishes in budget.
    pub threads: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            budget: Budget::default(),
            threads: 1,
        }
    }
}

impl SolverConfig {
    pub fn with_budget(budget: Budget) -> Self {
        SolverConfig {
            budget,
            threads: 1,
        }
    }
}

/// True iff every part, as a spanning subgraph of `g`, is a member of `f`.
pub fn verify_partition(
    g: &Graph,
    f: &ClassDescriptor,
    p: &EdgePartition,
) -> Result<bool, SolveError> {
    if p.host != g.host_id() {
        return Err(SolveError::HostMismatch);
    }
    for part in 0..p.k {
        if !f.contains(&p.part_graph(g, part)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff no two edges sharing an endpoint have the same color.
pub fn verify_coloring(g: &Graph, c: &EdgeColoring) -> Result<bool, SolveError> {
    if c.host != g.host_id() {
        return Err(SolveError::HostMismatch);
    }
    Ok(c.conflict(g).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::builtin_descriptor;
    use crate::graph::*;

    fn k4_c4_plus_matching() -> (Graph, EdgePartition) {
        let k4 = complete(4);
        // C4 0-1-2-3-0 and matching {0,2},{1,3}
        let mut assign = vec![0; 6];
        assign[k4.edge_id(0, 2).unwrap()] = 1;
        assign[k4.edge_id(1, 3).unwrap()] = 1;
        let p = EdgePartition::new(&k4, 2, assign).unwrap();
        (k4, p)
    }

    #[test]
    fn verify_partition_examples() {
        let op = builtin_descriptor("outerplanar").unwrap();
        let (k4, p) = k4_c4_plus_matching();
        assert_eq!(verify_partition(&k4, &op, &p), Ok(true));
        let all = EdgePartition::new(&k4, 1, vec![0; 6]).unwrap();
        assert_eq!(verify_partition(&k4, &op, &all), Ok(false));
        let empty = Graph::empty(0);
        for name in crate::classes::BUILTIN_NAMES {
            let f = builtin_descriptor(name).unwrap();
            for k in 0..3 {
                let p = EdgePartition::new(&empty, k, vec![]).unwrap();
                assert_eq!(verify_partition(&empty, &f, &p), Ok(true));
            }
        }
        assert_eq!(
            verify_partition(&cycle(4), &op, &p),
            Err(SolveError::HostMismatch)
        );
    }

    #[test]
    fn partition_rejects_bad_shapes() {
        let c3 = cycle(3);
        assert!(EdgePartition::new(&c3, 2, vec![0, 1]).is_err());
        assert!(EdgePartition::new(&c3, 2, vec![0, 1, 2]).is_err());
    }

    #[test]
    fn coloring_conflicts() {
        let c4 = cycle(4);
        // edges (0,1) (0,3) (1,2) (2,3)
        let good = EdgeColoring::new(&c4, 2, vec![0, 1, 1, 0]).unwrap();
        assert_eq!(verify_coloring(&c4, &good), Ok(true));
        let bad = EdgeColoring::new(&c4, 2, vec![0, 0, 1, 1]).unwrap();
        assert_eq!(verify_coloring(&c4, &bad), Ok(false));
        assert_eq!(bad.conflict(&c4), Some((0, 1)));
    }
}
