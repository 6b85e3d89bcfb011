//! Sidecar file describing where every node and edge of `G'` comes from.
//!
//! ```text
//! # reduced instance provenance
//! class outerplanar
//! k 3
//! mode relaxed
//! maximality none
//! source 4 6                  source graph: nodes, edges
//! gadget 6 0                  gadget graph: nodes, edges
//! labels 6
//! node source 0 -> 0          one line per source node
//! node gadget 0 -> 4          one line per gadget node
//! w 1 -> 4                    connector node of each label
//! indep 0 1 2 3 4 5           gadget-local independent set
//! phi 0 1 -> 1                label of each source edge
//! witness 0 1 -> 2            part (from 1) of each gadget edge
//! origin 0 1 -> source 0 1    one line per edge of G', in edge-id order
//! origin 0 4 -> connector 0 1 u-side
//! origin 4 5 -> gadget 0 1
//! ```
//!
//! Node and edge endpoints are local to the graph they are listed for,
//! except in `origin` and `w` lines, whose left-hand side is in `G'`.

use std::fmt::Write;

use super::{
    assemble, EdgeOrigin, GadgetGraph, Labeling, Maximality, Mode, ReduceError, ReducedInstance,
};
use crate::classes::builtin_descriptor;
use crate::graph::{parse_edge_list, Graph, Node, NodeSet};
use crate::solver::EdgePartition;

pub fn render_provenance(inst: &ReducedInstance) -> String {
    let g = &inst.source;
    let h = &inst.gadget.h;
    let mut s = String::from("# reduced instance provenance\n");
    writeln!(s, "class {}", inst.class()).unwrap();
    writeln!(s, "k {}", inst.k()).unwrap();
    writeln!(s, "mode {}", inst.mode).unwrap();
    writeln!(s, "maximality {}", inst.gadget.maximality).unwrap();
    writeln!(s, "source {} {}", g.n(), g.m()).unwrap();
    writeln!(s, "gadget {} {}", h.n(), h.m()).unwrap();
    writeln!(s, "labels {}", inst.labeling.count()).unwrap();
    for v in 0..g.n() {
        writeln!(s, "node source {v} -> {}", inst.source_node(v)).unwrap();
    }
    for x in 0..h.n() {
        writeln!(s, "node gadget {x} -> {}", inst.gadget_node(x)).unwrap();
    }
    for (i, w) in inst.w.iter().enumerate() {
        writeln!(s, "w {} -> {w}", i + 1).unwrap();
    }
    s.push_str("indep");
    for x in inst.gadget.indep.iter() {
        write!(s, " {x}").unwrap();
    }
    s.push('\n');
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        writeln!(s, "phi {u} {v} -> {}", inst.labeling.label(e)).unwrap();
    }
    for (e, &(x, y)) in h.edges().iter().enumerate() {
        writeln!(s, "witness {x} {y} -> {}", inst.gadget.witness.part_of(e) + 1).unwrap();
    }
    for (e, &(a, b)) in inst.gprime.edges().iter().enumerate() {
        let what = match inst.edge_origin[e] {
            EdgeOrigin::Source(f) => {
                let (u, v) = g.edge(f);
                format!("source {u} {v}")
            }
            EdgeOrigin::Gadget(f) => {
                let (x, y) = h.edge(f);
                format!("gadget {x} {y}")
            }
            EdgeOrigin::Connector { source, side } => {
                let (u, v) = g.edge(source);
                format!("connector {u} {v} {side}")
            }
        };
        writeln!(s, "origin {a} {b} -> {what}").unwrap();
    }
    s
}

#[derive(Default)]
struct Raw {
    class: Option<String>,
    k: Option<usize>,
    mode: Option<Mode>,
    maximality: Option<Maximality>,
    source: Option<(usize, usize)>,
    gadget: Option<(usize, usize)>,
    labels: Option<usize>,
    source_nodes: Vec<(Node, Node)>,
    gadget_nodes: Vec<(Node, Node)>,
    w: Vec<(usize, Node)>,
    indep: Option<Vec<Node>>,
    phi: Vec<((Node, Node), usize)>,
    witness: Vec<((Node, Node), usize)>,
    origins: Vec<(usize, String)>,
}

/// Rebuilds an instance from the edge list of `G'` and its sidecar. The
/// instance is re-assembled from the sidecar and must reproduce `G'` and
/// every provenance line exactly. A gadget recorded as verified is loaded
/// as [`Maximality::Assumed`].
pub fn parse_instance(gprime_text: &str, sidecar: &str) -> Result<ReducedInstance, ReduceError> {
    let gprime = parse_edge_list(gprime_text)?;
    let raw = read_raw(sidecar)?;
    let missing = |what: &str| ReduceError::Provenance {
        line: 0,
        msg: format!("missing {what} line"),
    };
    let class = raw.class.as_deref().ok_or_else(|| missing("class"))?;
    let f = builtin_descriptor(class).map_err(|e| ReduceError::Provenance {
        line: 0,
        msg: e.to_string(),
    })?;
    let k = raw.k.ok_or_else(|| missing("k"))?;
    let mode = raw.mode.ok_or_else(|| missing("mode"))?;
    let maximality = match raw.maximality.ok_or_else(|| missing("maximality"))? {
        Maximality::Verified => Maximality::Assumed,
        m => m,
    };
    let (sn, sm) = raw.source.ok_or_else(|| missing("source"))?;
    let (gn, gm) = raw.gadget.ok_or_else(|| missing("gadget"))?;
    let labels = raw.labels.ok_or_else(|| missing("labels"))?;

    let g = Graph::new(sn, raw.phi.iter().map(|p| p.0))?;
    let h = Graph::new(gn, raw.witness.iter().map(|p| p.0))?;
    let inconsistent = |msg: String| ReduceError::Provenance { line: 0, msg };
    if g.m() != sm || h.m() != gm {
        return Err(inconsistent("edge counts disagree with phi/witness lines".into()));
    }
    let mut phi = vec![0; g.m()];
    for &((u, v), l) in &raw.phi {
        phi[g.edge_id(u, v).unwrap()] = l;
    }
    let lab = Labeling::new(&g, phi).ok_or_else(|| inconsistent("label 0 is not allowed".into()))?;
    if lab.count() != labels {
        return Err(inconsistent(format!(
            "labels {labels} but phi uses {}",
            lab.count()
        )));
    }
    let mut parts = vec![0; h.m()];
    for &((x, y), p) in &raw.witness {
        if p == 0 {
            return Err(inconsistent("witness parts are numbered from 1".into()));
        }
        parts[h.edge_id(x, y).unwrap()] = p - 1;
    }
    let witness = EdgePartition::new(&h, k, parts).map_err(|e| inconsistent(e.to_string()))?;
    let indep = NodeSet::new(raw.indep.clone().ok_or_else(|| missing("indep"))?);
    let gadget = if maximality == Maximality::None && h.m() == 0 && indep.len() == gn {
        GadgetGraph::relaxed(gn, &f, k)
    } else {
        GadgetGraph::custom(h, &f, witness, indep, maximality)?
    };
    if gadget.k != k {
        return Err(inconsistent("witness part count differs from k".into()));
    }
    let inst = assemble(&g, &lab, &gadget, mode)?;

    if inst.gprime != gprime {
        return Err(inconsistent("edge list does not match the re-assembled graph".into()));
    }
    let expect_nodes: Vec<(Node, Node)> = (0..sn).map(|v| (v, inst.source_node(v))).collect();
    let expect_gadget: Vec<(Node, Node)> = (0..gn).map(|x| (x, inst.gadget_node(x))).collect();
    let expect_w: Vec<(usize, Node)> = inst.w.iter().enumerate().map(|(i, &w)| (i + 1, w)).collect();
    if raw.source_nodes != expect_nodes || raw.gadget_nodes != expect_gadget || raw.w != expect_w {
        return Err(inconsistent("node map differs from the standard layout".into()));
    }
    // compare origin lines against a fresh rendering
    let rendered = render_provenance(&inst);
    let fresh: Vec<&str> = rendered.lines().filter(|l| l.starts_with("origin ")).collect();
    if fresh.len() != raw.origins.len() {
        return Err(inconsistent(format!(
            "{} origin lines for {} edges",
            raw.origins.len(),
            fresh.len()
        )));
    }
    for ((line, got), want) in raw.origins.iter().zip(fresh) {
        if got != want {
            return Err(ReduceError::Provenance {
                line: *line,
                msg: format!("expected {want:?}"),
            });
        }
    }
    Ok(inst)
}

fn read_raw(text: &str) -> Result<Raw, ReduceError> {
    let mut raw = Raw::default();
    for (i, l) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: String| ReduceError::Provenance { line, msg };
        let t = l.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let tok: Vec<&str> = t.split_whitespace().collect();
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| err(format!("expected a number, found {s:?}")))
        };
        match tok.as_slice() {
            ["class", c] => raw.class = Some(c.to_string()),
            ["k", k] => raw.k = Some(num(k)?),
            ["mode", m] => raw.mode = Some(m.parse().map_err(err)?),
            ["maximality", m] => {
                raw.maximality = Some(match *m {
                    "verified" => Maximality::Verified,
                    "assumed" => Maximality::Assumed,
                    "none" => Maximality::None,
                    _ => return Err(err(format!("unknown maximality {m:?}"))),
                })
            }
            ["source", n, m] => raw.source = Some((num(n)?, num(m)?)),
            ["gadget", n, m] => raw.gadget = Some((num(n)?, num(m)?)),
            ["labels", l] => raw.labels = Some(num(l)?),
            ["node", "source", a, "->", b] => raw.source_nodes.push((num(a)?, num(b)?)),
            ["node", "gadget", a, "->", b] => raw.gadget_nodes.push((num(a)?, num(b)?)),
            ["w", l, "->", v] => raw.w.push((num(l)?, num(v)?)),
            ["indep", rest @ ..] => {
                raw.indep = Some(rest.iter().map(|s| num(s)).collect::<Result<_, _>>()?)
            }
            ["phi", u, v, "->", l] => raw.phi.push(((num(u)?, num(v)?), num(l)?)),
            ["witness", x, y, "->", p] => raw.witness.push(((num(x)?, num(y)?), num(p)?)),
            ["origin", ..] => raw.origins.push((line, t.to_string())),
            _ => return Err(err(format!("unrecognised line {t:?}"))),
        }
    }
    Ok(raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::builtin_descriptor;
    use crate::graph::*;
    use crate::reduction::{build_gadget, label_short_paths, reduce};
    use crate::solver::Budget;

    #[test]
    fn golden_single_edge_relaxed() {
        let f = builtin_descriptor("outerplanar").unwrap();
        let inst = reduce(&path(2), &f, 1, Mode::Relaxed, &Budget::default(), 1).unwrap();
        let expected = "\
# reduced instance provenance
class outerplanar
k 1
mode relaxed
maximality none
source 2 1
gadget 1 0
labels 1
node source 0 -> 0
node source 1 -> 1
node gadget 0 -> 2
w 1 -> 2
indep 0
phi 0 1 -> 1
origin 0 1 -> source 0 1
origin 0 2 -> connector 0 1 u-side
origin 1 2 -> connector 0 1 v-side
";
        assert_eq!(render_provenance(&inst), expected);
        let back = parse_instance(&serialize_edge_list(&inst.gprime), expected).unwrap();
        assert_eq!(back, inst);
    }

    #[test]
    fn round_trip_with_a_built_gadget() {
        let f = builtin_descriptor("outerplanar").unwrap();
        let g = path(2);
        let lab = label_short_paths(&g, 1);
        let gadget = build_gadget(4, &f, 1, 1, &Budget::default(), 1).unwrap();
        let inst = assemble(&g, &lab, &gadget, Mode::Paper).unwrap();
        let text = render_provenance(&inst);
        assert!(text.contains("maximality verified\n"));
        assert!(text.contains("witness 0 1 -> 1\n"));
        let back = parse_instance(&serialize_edge_list(&inst.gprime), &text).unwrap();
        assert_eq!(back.gadget.maximality, Maximality::Assumed);
        assert_eq!(back.gprime, inst.gprime);
        assert_eq!(back.edge_origin, inst.edge_origin);
        assert_eq!(back.gadget.witness, inst.gadget.witness);
    }

    #[test]
    fn tampering_is_detected() {
        let f = builtin_descriptor("planar").unwrap();
        let inst = reduce(&complete(4), &f, 3, Mode::Relaxed, &Budget::default(), 1).unwrap();
        let text = render_provenance(&inst);
        let edges = serialize_edge_list(&inst.gprime);
        assert!(parse_instance(&edges, &text).is_ok());
        let swapped = text.replacen("u-side", "v-side", 1);
        assert!(matches!(
            parse_instance(&edges, &swapped),
            Err(ReduceError::Provenance { .. })
        ));
        let relabeled = text.replacen("phi 0 1 -> 1", "phi 0 1 -> 2", 1);
        assert!(parse_instance(&edges, &relabeled).is_err());
        assert!(parse_instance(&edges, &text.replace("class planar", "class nosuch")).is_err());
        let other = serialize_edge_list(&inst.gprime.without_edge(0).unwrap());
        assert!(parse_instance(&other, &text).is_err());
    }
}
