//! Exact F-thickness solvers and the edge-coloring reduction.
pub mod classes;
pub mod graph;
pub mod lab;
pub mod reduction;
pub mod solver;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/classes.md")]
    mod classes {}
    #[doc = include_str!("../../../book/src/thickness.md")]
    mod thickness {}
    #[doc = include_str!("../../../book/src/coloring.md")]
    mod coloring {}
    #[doc = include_str!("../../../book/src/reduction.md")]
    mod reduction {}
    #[doc = include_str!("../../../book/src/campaigns.md")]
    mod campaigns {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
