//! Plain-text rendering of results and certificates.
//!
//! A partition is written as a `k K` header followed by one
//! `edge U V -> P` line per edge in edge-id order, with parts numbered from 1.
//! Result files add `key: value` metadata lines, which the parser skips.

use std::fmt::Write;

use super::{Certificate, EdgePartition, SolveError, SolveResult};
use crate::graph::Graph;

pub fn render_partition(g: &Graph, p: &EdgePartition) -> String {
    let mut s = format!("k {}\n", p.k());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        writeln!(s, "edge {u} {v} -> {}", p.part_of(e) + 1).unwrap();
    }
    s
}

/// Text report of a solve. Wall time is included only when asked for, so the
/// default output is byte-for-byte reproducible.
pub fn render_result(g: &Graph, r: &SolveResult, with_time: bool) -> String {
    let mut s = String::new();
    writeln!(s, "decision: {}", r.decision).unwrap();
    writeln!(s, "nodes_expanded: {}", r.stats.nodes_expanded).unwrap();
    writeln!(s, "membership_prunes: {}", r.stats.membership_prunes).unwrap();
    writeln!(s, "density_prunes: {}", r.stats.density_prunes).unwrap();
    if with_time {
        writeln!(s, "elapsed_ms: {}", r.stats.elapsed.as_millis()).unwrap();
    }
    match &r.certificate {
        Some(Certificate::Partition(p)) => {
            s.push_str("certificate: partition\n");
            s.push_str(&render_partition(g, p));
        }
        Some(Certificate::Coloring(c)) => {
            s.push_str("certificate: coloring\n");
            writeln!(s, "k {}", c.k()).unwrap();
            for (e, &(u, v)) in g.edges().iter().enumerate() {
                writeln!(s, "edge {u} {v} -> {}", c.color(e) + 1).unwrap();
            }
        }
        None => {}
    }
    s
}

/// Reads a partition of `g` in the format written by [`render_partition`].
/// Every edge of `g` must be listed exactly once.
pub fn parse_partition(g: &Graph, text: &str) -> Result<EdgePartition, SolveError> {
    let bad = |line: usize, msg: String| SolveError::InvalidCertificate(format!("line {line}: {msg}"));
    let mut k = None;
    let mut assign = vec![None; g.m()];
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.contains(':') {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        match tok.as_slice() {
            ["k", kk] => {
                let kk: usize = kk
                    .parse()
                    .map_err(|_| bad(line_no, format!("bad part count {kk:?}")))?;
                if k.replace(kk).is_some() {
                    return Err(bad(line_no, "repeated k header".into()));
                }
            }
            ["edge", u, v, "->", p] => {
                let num = |t: &str| {
                    t.parse::<usize>()
                        .map_err(|_| bad(line_no, format!("bad number {t:?}")))
                };
                let (u, v, p) = (num(u)?, num(v)?, num(p)?);
                let e = g
                    .edge_id(u, v)
                    .ok_or_else(|| bad(line_no, format!("{{{u}, {v}}} is not an edge")))?;
                if p == 0 {
                    return Err(bad(line_no, "parts are numbered from 1".into()));
                }
                if assign[e].replace(p - 1).is_some() {
                    return Err(bad(line_no, format!("edge {{{u}, {v}}} listed twice")));
                }
            }
            _ => return Err(bad(line_no, format!("unrecognised line {line:?}"))),
        }
    }
    let k = k.ok_or_else(|| SolveError::InvalidCertificate("missing k header".into()))?;
    let assign = assign
        .into_iter()
        .enumerate()
        .map(|(e, p)| {
            p.ok_or_else(|| {
                let (u, v) = g.edge(e);
                SolveError::InvalidCertificate(format!("edge {{{u}, {v}}} has no part"))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    EdgePartition::new(g, k, assign)
}
