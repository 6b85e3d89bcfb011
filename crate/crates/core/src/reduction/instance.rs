use std::fmt;

use super::{GadgetGraph, Labeling, Mode, ReduceError};
use crate::graph::{EdgeId, Graph, Node};
use crate::solver::{EdgeColoring, EdgePartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    U,
    V,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::U => "u-side",
            Side::V => "v-side",
        })
    }
}

/// Where an edge of the reduced graph comes from. Edge ids refer to the
/// source graph or the gadget graph respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeOrigin {
    Source(EdgeId),
    Gadget(EdgeId),
    /// `{u, w}` or `{v, w}` for source edge `{u, v}` and its connector node `w`.
    Connector { source: EdgeId, side: Side },
}

/// `G'`: disjoint copies of the source graph and the gadget, joined by two
/// connector edges per source edge.
///
/// Source node `v` keeps id `v`; gadget node `x` becomes `n + x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedInstance {
    pub gprime: Graph,
    pub source: Graph,
    pub gadget: GadgetGraph,
    pub labeling: Labeling,
    pub mode: Mode,
    pub edge_origin: Vec<EdgeOrigin>,
    /// `w[l - 1]` is the node of `G'` that label `l` connects to.
    pub w: Vec<Node>,
}

impl ReducedInstance {
    pub fn k(&self) -> usize {
        self.gadget.k
    }

    pub fn class(&self) -> &'static str {
        self.gadget.class
    }

    pub fn source_node(&self, v: Node) -> Node {
        v
    }

    pub fn gadget_node(&self, x: Node) -> Node {
        self.source.n() + x
    }

    /// Edge id in `G'` of the copy of source edge `e`.
    pub fn source_edge_image(&self, e: EdgeId) -> EdgeId {
        let (u, v) = self.source.edge(e);
        self.gprime.edge_id(u, v).expect("source edge is copied")
    }

    /// Connector node of source edge `e`, as a node of `G'`.
    pub fn connector_node(&self, e: EdgeId) -> Node {
        self.w[self.labeling.label(e) - 1]
    }
}

pub fn assemble(
    g: &Graph,
    lab: &Labeling,
    gadget: &GadgetGraph,
    mode: Mode,
) -> Result<ReducedInstance, ReduceError> {
    if lab.host() != g.host_id() {
        return Err(ReduceError::HostMismatch);
    }
    if gadget.indep.len() < lab.count() {
        return Err(ReduceError::TooFewIndependent {
            labels: lab.count(),
            available: gadget.indep.len(),
        });
    }
    let n = g.n();
    let w: Vec<Node> = gadget.indep.iter().take(lab.count()).map(|x| n + x).collect();
    let mut pairs: Vec<((Node, Node), EdgeOrigin)> = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        pairs.push(((u, v), EdgeOrigin::Source(e)));
        let t = w[lab.label(e) - 1];
        pairs.push(((u, t), EdgeOrigin::Connector { source: e, side: Side::U }));
        pairs.push(((v, t), EdgeOrigin::Connector { source: e, side: Side::V }));
    }
    for (e, &(x, y)) in gadget.h.edges().iter().enumerate() {
        pairs.push(((n + x, n + y), EdgeOrigin::Gadget(e)));
    }
    let total = pairs.len();
    let gprime = Graph::new(n + gadget.h.n(), pairs.iter().map(|p| p.0)).map_err(|err| {
        ReduceError::InvalidGadget(format!("assembled graph is not simple: {err}"))
    })?;
    assert_eq!(gprime.m(), total);
    let mut edge_origin = vec![EdgeOrigin::Source(0); total];
    for ((a, b), o) in pairs {
        edge_origin[gprime.edge_id(a, b).unwrap()] = o;
    }
    Ok(ReducedInstance {
        gprime,
        source: g.clone(),
        gadget: gadget.clone(),
        labeling: lab.clone(),
        mode,
        edge_origin,
        w,
    })
}

/// Partition of `G'`: part `i` is the gadget's witness part `i` plus the
/// triangles `{u, v, w}` of all source edges with color `i`.
pub fn forward_certificate(
    coloring: &EdgeColoring,
    inst: &ReducedInstance,
) -> Result<EdgePartition, ReduceError> {
    if coloring.host() != inst.source.host_id() {
        return Err(ReduceError::HostMismatch);
    }
    if coloring.k() > inst.k() {
        return Err(ReduceError::PartCountMismatch {
            expected: inst.k(),
            got: coloring.k(),
        });
    }
    if let Some((a, b)) = coloring.conflict(&inst.source) {
        return Err(ReduceError::ImproperColoring { e: a, f: b });
    }
    let assign = inst
        .edge_origin
        .iter()
        .map(|o| match *o {
            EdgeOrigin::Source(e) | EdgeOrigin::Connector { source: e, .. } => coloring.color(e),
            EdgeOrigin::Gadget(e) => inst.gadget.witness.part_of(e),
        })
        .collect();
    Ok(EdgePartition::new(&inst.gprime, inst.k(), assign)?)
}

/// Reads each source edge's part as its color. Fails with the first path
/// `a - b - c` whose two edges landed in the same part.
pub fn extract_coloring(
    p: &EdgePartition,
    inst: &ReducedInstance,
) -> Result<EdgeColoring, ReduceError> {
    if p.host() != inst.gprime.host_id() {
        return Err(ReduceError::HostMismatch);
    }
    if p.k() != inst.k() {
        return Err(ReduceError::PartCountMismatch {
            expected: inst.k(),
            got: p.k(),
        });
    }
    let color: Vec<usize> = (0..inst.source.m())
        .map(|e| p.part_of(inst.source_edge_image(e)))
        .collect();
    let c = EdgeColoring::new(&inst.source, inst.k(), color)?;
    if let Some((e, f)) = c.conflict(&inst.source) {
        let (a, b) = inst.source.edge(e);
        let (x, y) = inst.source.edge(f);
        let mid = if a == x || a == y { a } else { b };
        let ends = |(s, t): (Node, Node)| if s == mid { t } else { s };
        return Err(ReduceError::SharedPart {
            path: [ends((a, b)), mid, ends((x, y))],
            part: c.color(e) + 1,
        });
    }
    Ok(c)
}
