use std::fmt::Write;

use crate::graph::Graph;
use crate::reduction::{EdgeOrigin, ReducedInstance};

/// Undirected Graphviz text for `g`, nodes and edges in id order.
pub fn emit_dot(g: &Graph) -> String {
    let mut s = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        writeln!(s, "  {v};").unwrap();
    }
    for &(u, v) in g.edges() {
        writeln!(s, "  {u} -- {v};").unwrap();
    }
    s.push_str("}\n");
    s
}

/// Reduced graph with source nodes, gadget nodes and connector targets
/// styled apart. Connector edges are dashed and carry their label.
pub fn emit_instance_dot(inst: &ReducedInstance) -> String {
    let g = &inst.gprime;
    let n = inst.source.n();
    let mut s = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        if v < n {
            writeln!(s, "  {v} [label=\"s{v}\"];").unwrap();
        } else if let Some(l) = inst.w.iter().position(|&w| w == v) {
            writeln!(
                s,
                "  {v} [label=\"w{}\", shape=doublecircle, style=filled, fillcolor=lightgray];",
                l + 1
            )
            .unwrap();
        } else {
            writeln!(s, "  {v} [label=\"h{}\", style=filled, fillcolor=lightgray];", v - n).unwrap();
        }
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let attrs = match inst.edge_origin[e] {
            EdgeOrigin::Source(_) => "color=black, penwidth=2".to_string(),
            EdgeOrigin::Gadget(_) => "color=gray".to_string(),
            EdgeOrigin::Connector { source, .. } => format!(
                "color=blue, style=dashed, label=\"{}\"",
                inst.labeling.label(source)
            ),
        };
        writeln!(s, "  {u} -- {v} [{attrs}];").unwrap();
    }
    s.push_str("}\n");
    s
}
