//! Exhaustive reference for the thickness decision. Tries every map from
//! edges to parts, with no ordering heuristics and no pruning, and tests
//! membership only on complete parts.

use std::time::Instant;

use super::{Certificate, Decision, EdgePartition, SolveError, SolveResult, Stats};
use crate::classes::ClassDescriptor;
use crate::graph::Graph;

/// Default cap on `k^m` for [`thickness_oracle`].
pub const ORACLE_ASSIGNMENT_LIMIT: u128 = 10_000_000;

// part membership is cached per edge mask up to this many edges
const MEMO_EDGES: usize = 24;

pub fn thickness_oracle(
    g: &Graph,
    f: &ClassDescriptor,
    k: usize,
) -> Result<SolveResult, SolveError> {
    thickness_oracle_with_limit(g, f, k, ORACLE_ASSIGNMENT_LIMIT)
}

pub fn thickness_oracle_with_limit(
    g: &Graph,
    f: &ClassDescriptor,
    k: usize,
    limit: u128,
) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let m = g.m();
    let total = (k as u128)
        .checked_pow(m as u32)
        .unwrap_or(u128::MAX);
    if total > limit {
        return Err(SolveError::OracleGuard {
            assignments: total,
            limit,
        });
    }
    if k == 0 {
        let yes = m == 0;
        return Ok(SolveResult {
            decision: if yes { Decision::Yes } else { Decision::No },
            certificate: yes
                .then(|| Certificate::Partition(EdgePartition::new(g, 0, Vec::new()).unwrap())),
            stats: Stats::default(),
        });
    }

    let mut memo: Vec<u8> = if m <= MEMO_EDGES {
        vec![0; 1 << m]
    } else {
        Vec::new()
    };
    let mut member = |mask: &[bool], key: u64| -> bool {
        let compute = || {
            let edges = (0..m).filter(|&e| mask[e]).map(|e| g.edge(e)).collect();
            f.contains(&Graph::from_pairs_unchecked(g.n(), edges))
        };
        if m > MEMO_EDGES {
            return compute();
        }
        let slot = &mut memo[key as usize];
        if *slot == 0 {
            *slot = if compute() { 1 } else { 2 };
        }
        *slot == 1
    };

    // odometer over assignments; edge 0 is the most significant digit
    let mut assign = vec![0usize; m];
    let mut examined: u64 = 0;
    let mut masks = vec![vec![false; m]; k];
    let mut keys = vec![0u64; k];
    loop {
        examined += 1;
        for p in 0..k {
            masks[p].iter_mut().for_each(|b| *b = false);
            keys[p] = 0;
        }
        for (e, &p) in assign.iter().enumerate() {
            masks[p][e] = true;
            if e < 64 {
                keys[p] |= 1 << e;
            }
        }
        if (0..k).all(|p| member(&masks[p], keys[p])) {
            let p = EdgePartition::new(g, k, assign)?;
            return Ok(SolveResult {
                decision: Decision::Yes,
                certificate: Some(Certificate::Partition(p)),
                stats: Stats {
                    nodes_expanded: examined,
                    elapsed: start.elapsed(),
                    ..Stats::default()
                },
            });
        }
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(SolveResult {
                    decision: Decision::No,
                    certificate: None,
                    stats: Stats {
                        nodes_expanded: examined,
                        elapsed: start.elapsed(),
                        ..Stats::default()
                    },
                });
            }
            i -= 1;
            assign[i] += 1;
            if assign[i] < k {
                break;
            }
            assign[i] = 0;
        }
    }
}
