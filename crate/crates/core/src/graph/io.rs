use std::fmt::Write;

use super::{Graph, GraphError, Node};

/// Parses the edge-list format: a header line `n m`, then `m` lines `u v`.
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(GraphError::Malformed {
        line: 1,
        msg: "missing header \"n m\"".into(),
    })?;
    let [n, m] = two_numbers(header, hline)?;

    let mut edges: Vec<(Node, Node)> = Vec::with_capacity(m);
    let mut last_line = hline;
    for (line, body) in lines {
        let [u, v] = two_numbers(body, line)?;
        edges.push((u, v));
        last_line = line;
    }
    if edges.len() != m {
        return Err(GraphError::Malformed {
            line: last_line,
            msg: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Graph::new(n, edges)
}

fn two_numbers(body: &str, line: usize) -> Result<[usize; 2], GraphError> {
    let mut it = body.split_whitespace();
    let mut next = || -> Result<usize, GraphError> {
        let tok = it.next().ok_or_else(|| GraphError::Malformed {
            line,
            msg: format!("expected two integers, got {body:?}"),
        })?;
        tok.parse().map_err(|_| GraphError::Malformed {
            line,
            msg: format!("not a non-negative integer: {tok:?}"),
        })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(GraphError::Malformed {
            line,
            msg: format!("trailing tokens in {body:?}"),
        });
    }
    Ok([a, b])
}

/// Emits the canonical edge-list text, one LF-terminated line per record.
pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
