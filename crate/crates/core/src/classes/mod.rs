//! Graph classes as membership predicates plus declared closure metadata.
//!
//! A [`ClassDescriptor`] carries the three structural conditions the
//! reduction needs:
//!
//! * (a) closed under topological minors,
//! * (b) closed under 1-sums,
//! * (c) contains the triangle,
//!
//! together with monotonicity and an edge-density bound. The flags are
//! declared, not proven; the laboratory samples them.

mod minor;
mod planarity;
mod recognizers;

use std::fmt;

use thiserror::Error;

use crate::graph::Graph;

pub use minor::{has_minor, has_minor_unguarded, MINOR_SEARCH_LIMIT};
pub use planarity::is_planar;
pub use recognizers::{
    is_cactus, is_eulerian_class, is_forest, is_outerplanar, is_partial_two_tree,
    is_pseudoforest,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("unknown class {name:?}; available: {}", BUILTIN_NAMES.join(", "))]
    UnknownClass { name: String },
    #[error("graph has {n} nodes, above the exhaustive-search limit of {limit}")]
    SizeGuard { n: usize, limit: usize },
}

/// Names accepted by [`builtin_descriptor`].
pub const BUILTIN_NAMES: [&str; 7] = [
    "forest",
    "pseudoforest",
    "eulerian",
    "cactus",
    "outerplanar",
    "planar",
    "partial-2-tree",
];

/// Declared bound `|E(F)| <= D * |V(F)|` over all members `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Density {
    Finite { num: u64, den: u64 },
    Unbounded,
}

impl Density {
    pub const fn ratio(num: u64, den: u64) -> Density {
        Density::Finite { num, den }
    }

    /// `floor(D * n)`, or `None` when unbounded.
    pub fn bound(&self, n: usize) -> Option<usize> {
        match *self {
            Density::Finite { num, den } => Some((num * n as u64 / den) as usize),
            Density::Unbounded => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Density::Finite { .. })
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Density::Finite { num, den: 1 } => write!(f, "{num}"),
            Density::Finite { num, den } => write!(f, "{num}/{den}"),
            Density::Unbounded => f.write_str("inf"),
        }
    }
}

/// One of the three structural conditions on a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    TopologicalMinors,
    OneSums,
    Triangle,
}

impl Condition {
    pub fn letter(&self) -> char {
        match self {
            Condition::TopologicalMinors => 'a',
            Condition::OneSums => 'b',
            Condition::Triangle => 'c',
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self {
            Condition::TopologicalMinors => "closed under topological minors",
            Condition::OneSums => "closed under 1-sums",
            Condition::Triangle => "contains the triangle",
        };
        write!(f, "condition ({}) {}", self.letter(), what)
    }
}

#[derive(Clone, Copy)]
pub struct ClassDescriptor {
    pub name: &'static str,
    pub member: fn(&Graph) -> bool,
    pub monotone: bool,
    pub closed_topo_minors: bool,
    pub closed_one_sums: bool,
    pub contains_c3: bool,
    pub density: Density,
    /// Tight maximum edge count of an `n`-node member, when known. Falls
    /// back to the density bound.
    pub max_edges: Option<fn(usize) -> usize>,
}

impl fmt::Debug for ClassDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClassDescriptor")
            .field("name", &self.name)
            .field("monotone", &self.monotone)
            .field("closed_topo_minors", &self.closed_topo_minors)
            .field("closed_one_sums", &self.closed_one_sums)
            .field("contains_c3", &self.contains_c3)
            .field("density", &self.density)
            .finish()
    }
}

impl ClassDescriptor {
    pub fn contains(&self, g: &Graph) -> bool {
        (self.member)(g)
    }

    /// Upper bound on the edges of an `n`-node member, if the class is sparse.
    pub fn edge_capacity(&self, n: usize) -> Option<usize> {
        match self.max_edges {
            Some(f) => Some(f(n)),
            None => self.density.bound(n),
        }
    }

    /// Conditions declared as failing, in (a), (b), (c) order.
    pub fn failed_conditions(&self) -> Vec<Condition> {
        let mut out = Vec::new();
        if !self.closed_topo_minors {
            out.push(Condition::TopologicalMinors);
        }
        if !self.closed_one_sums {
            out.push(Condition::OneSums);
        }
        if !self.contains_c3 {
            out.push(Condition::Triangle);
        }
        out
    }

    /// Closure under topological minors includes closure under subgraphs.
    pub fn is_consistent(&self) -> bool {
        !self.closed_topo_minors || self.monotone
    }
}

fn tree_edges(n: usize) -> usize {
    n.saturating_sub(1)
}

fn pseudoforest_edges(n: usize) -> usize {
    n
}

fn cactus_edges(n: usize) -> usize {
    3 * n.saturating_sub(1) / 2
}

fn outerplanar_edges(n: usize) -> usize {
    if n < 2 {
        0
    } else {
        2 * n - 3
    }
}

fn planar_edges(n: usize) -> usize {
    match n {
        0 | 1 => 0,
        2 => 1,
        _ => 3 * n - 6,
    }
}

pub fn builtin_descriptor(name: &str) -> Result<ClassDescriptor, ClassError> {
    let d = match name {
        "forest" => ClassDescriptor {
            name: "forest",
            member: is_forest,
            monotone: true,
            closed_topo_minors: true,
            closed_one_sums: true,
            contains_c3: false,
            density: Density::ratio(1, 1),
            max_edges: Some(tree_edges),
        },
        "pseudoforest" => ClassDescriptor {
            name: "pseudoforest",
            member: is_pseudoforest,
            monotone: true,
            closed_topo_minors: true,
            closed_one_sums: false,
            contains_c3: true,
            density: Density::ratio(1, 1),
            max_edges: Some(pseudoforest_edges),
        },
        "eulerian" => ClassDescriptor {
            name: "eulerian",
            member: is_eulerian_class,
            monotone: false,
            closed_topo_minors: false,
            closed_one_sums: true,
            contains_c3: true,
            density: Density::Unbounded,
            max_edges: None,
        },
        "cactus" => ClassDescriptor {
            name: "cactus",
            member: is_cactus,
            monotone: true,
            closed_topo_minors: true,
            closed_one_sums: true,
            contains_c3: true,
            density: Density::ratio(3, 2),
            max_edges: Some(cactus_edges),
        },
        "outerplanar" => ClassDescriptor {
            name: "outerplanar",
            member: is_outerplanar,
            monotone: true,
            closed_topo_minors: true,
            closed_one_sums: true,
            contains_c3: true,
            density: Density::ratio(2, 1),
            max_edges: Some(outerplanar_edges),
        },
        "planar" => ClassDescriptor {
            name: "planar",
            member: is_planar,
            monotone: true,
            closed_topo_minors: true,
            closed_one_sums: true,
            contains_c3: true,
            density: Density::ratio(3, 1),
            max_edges: Some(planar_edges),
        },
        "partial-2-tree" => ClassDescriptor {
            name: "partial-2-tree",
            member: is_partial_two_tree,
            monotone: true,
            closed_topo_minors: true,
            closed_one_sums: true,
            contains_c3: true,
            density: Density::ratio(2, 1),
            max_edges: Some(outerplanar_edges),
        },
        _ => {
            return Err(ClassError::UnknownClass {
                name: name.to_string(),
            })
        }
    };
    Ok(d)
}

/// All builtin descriptors in [`BUILTIN_NAMES`] order.
pub fn builtin_descriptors() -> Vec<ClassDescriptor> {
    BUILTIN_NAMES
        .iter()
        .map(|n| builtin_descriptor(n).expect("builtin"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn flags_match_the_table() {
        let expect = [
            ("forest", (true, true, false)),
            ("pseudoforest", (true, false, true)),
            ("eulerian", (false, true, true)),
            ("cactus", (true, true, true)),
            ("outerplanar", (true, true, true)),
            ("planar", (true, true, true)),
            ("partial-2-tree", (true, true, true)),
        ];
        for (name, flags) in expect {
            let d = builtin_descriptor(name).unwrap();
            assert_eq!(
                (d.closed_topo_minors, d.closed_one_sums, d.contains_c3),
                flags,
                "{name}"
            );
            assert!(d.is_consistent());
            assert_eq!(d.contains(&cycle(3)), d.contains_c3, "{name}");
        }
    }

    #[test]
    fn density_coefficients() {
        let dens: Vec<String> = builtin_descriptors()
            .iter()
            .map(|d| d.density.to_string())
            .collect();
        assert_eq!(dens, ["1", "1", "inf", "3/2", "2", "3", "2"]);
    }

    #[test]
    fn unknown_name_lists_classes() {
        let err = builtin_descriptor("nosuch").unwrap_err();
        let msg = err.to_string();
        for n in BUILTIN_NAMES {
            assert!(msg.contains(n));
        }
    }

    #[test]
    fn failed_conditions_are_named() {
        let f = builtin_descriptor("forest").unwrap();
        assert_eq!(f.failed_conditions(), vec![Condition::Triangle]);
        assert_eq!(
            Condition::Triangle.to_string(),
            "condition (c) contains the triangle"
        );
        assert!(builtin_descriptor("planar").unwrap().failed_conditions().is_empty());
    }

    /// Random member: add random edges while membership holds.
    fn random_member(d: &ClassDescriptor, n: usize, rng: &mut ChaCha8Rng) -> Graph {
        let mut g = Graph::empty(n);
        let mut cand = g.non_edges();
        let target = rng.gen_range(0..=cand.len());
        rand::seq::SliceRandom::shuffle(cand.as_mut_slice(), rng);
        for (u, v) in cand.into_iter().take(target) {
            let h = g.with_edge(u, v).unwrap();
            if d.contains(&h) {
                g = h;
            }
        }
        g
    }

    #[test]
    fn topological_minor_closure_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in builtin_descriptors().iter().filter(|d| d.closed_topo_minors) {
            for _ in 0..200 {
                let n = rng.gen_range(1..=9);
                let g = random_member(d, n, &mut rng);
                assert!(d.contains(&g));
                for e in 0..g.m() {
                    assert!(d.contains(&g.without_edge(e).unwrap()), "{} {g:?}", d.name);
                }
                for v in 0..g.n() {
                    if let Ok((s, _)) = smooth_degree_two(&g, v) {
                        assert!(d.contains(&s), "{} smoothing {v} of {g:?}", d.name);
                    }
                }
            }
        }
    }

    #[test]
    fn one_sum_closure_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for d in builtin_descriptors().iter().filter(|d| d.closed_one_sums) {
            for _ in 0..100 {
                let g1 = random_member(d, rng.gen_range(1..=6), &mut rng);
                let g2 = random_member(d, rng.gen_range(1..=6), &mut rng);
                let v1 = rng.gen_range(0..g1.n());
                let v2 = rng.gen_range(0..g2.n());
                let s = one_sum(&g1, v1, &g2, v2).unwrap();
                assert!(d.contains(&s), "{} {g1:?} {g2:?}", d.name);
            }
        }
    }

    #[test]
    fn density_holds_on_sampled_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for d in builtin_descriptors().iter().filter(|d| d.density.is_finite()) {
            for _ in 0..100 {
                let n = rng.gen_range(1..=9);
                let g = random_member(d, n, &mut rng);
                assert!(g.m() <= d.density.bound(n).unwrap(), "{}", d.name);
                assert!(g.m() <= d.edge_capacity(n).unwrap(), "{}", d.name);
            }
        }
    }

    #[test]
    fn planarity_agrees_with_kuratowski_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let (k5, k33) = (complete(5), complete_bipartite(3, 3));
        for _ in 0..400 {
            let n = rng.gen_range(5..=8);
            let p = rng.gen_range(0.3..0.8);
            let g = random_gnp(n, p, &mut rng);
            let by_minor = !(has_minor(&g, &k5).unwrap() || has_minor(&g, &k33).unwrap());
            assert_eq!(is_planar(&g), by_minor, "{g:?}");
        }
    }

    #[test]
    fn partial_two_tree_agrees_with_minor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let k4 = complete(4);
        for _ in 0..400 {
            let n = rng.gen_range(4..=9);
            let g = random_gnm(n, rng.gen_range(n - 1..=2 * n), &mut rng);
            assert_eq!(is_partial_two_tree(&g), !has_minor(&g, &k4).unwrap(), "{g:?}");
            if is_outerplanar(&g) {
                assert!(is_partial_two_tree(&g));
            }
        }
    }

    proptest! {
        #[test]
        fn outerplanar_matches_forbidden_minors(seed in any::<u64>(), n in 1usize..=8, p in 0.2f64..0.7) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_gnp(n, p, &mut rng);
            let k4 = complete(4);
            let k23 = complete_bipartite(2, 3);
            let oracle = !(has_minor(&g, &k4).unwrap() || has_minor(&g, &k23).unwrap());
            prop_assert_eq!(is_outerplanar(&g), oracle);
            if is_outerplanar(&g) && n >= 2 {
                prop_assert!(g.m() <= 2 * n - 3);
            }
        }
    }
}
