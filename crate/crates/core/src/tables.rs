//! Stored catalogue of the cocompact hyperbolic simplex groups: the
//! hyperbolic triangles (rank 3, parameterized) and the finitely many
//! diagrams of rank 4 and 5, together with their expected maximal finite
//! subgroup data used as a self-check.

use crate::analysis::Analyzer;
use crate::canon::{are_isomorphic, canonical_form};
use crate::classify::FiniteType;
use crate::graph::{CoxeterGraph, DynkinDiagram, Label};

/// One stored simplex diagram.
pub struct SimplexEntry {
    pub name: &'static str,
    pub graph: CoxeterGraph,
    /// Expected maximal finite standard subgroups: sorted multiset of
    /// sorted factor lists.
    pub expected_cf_max: Vec<Vec<FiniteType>>,
}

fn dynkin(n: usize, edges: &[(usize, usize, u32)]) -> CoxeterGraph {
    let edges: Vec<(usize, usize, Label)> = edges
        .iter()
        .map(|&(i, j, m)| (i, j, Label::Finite(m)))
        .collect();
    DynkinDiagram::numbered(n, &edges).unwrap().to_coxeter()
}

fn dynkin_path(labels: &[u32]) -> CoxeterGraph {
    let edges: Vec<(usize, usize, u32)> = labels
        .iter()
        .enumerate()
        .map(|(i, &m)| (i, i + 1, m))
        .collect();
    dynkin(labels.len() + 1, &edges)
}

fn dynkin_cycle(labels: &[u32]) -> CoxeterGraph {
    let n = labels.len();
    let edges: Vec<(usize, usize, u32)> = labels
        .iter()
        .enumerate()
        .map(|(i, &m)| (i, (i + 1) % n, m))
        .collect();
    dynkin(n, &edges)
}

use FiniteType::{A, B, D, F4, H3, H4, I2};

fn sorted(mut v: Vec<Vec<FiniteType>>) -> Vec<Vec<FiniteType>> {
    for inner in &mut v {
        inner.sort();
    }
    v.sort();
    v
}

/// The nine rank-4 diagrams.
pub fn simplex_rank4() -> Vec<SimplexEntry> {
    let entries: Vec<(&'static str, CoxeterGraph, Vec<Vec<FiniteType>>)> = vec![
        (
            "rank4-path-3-5-3",
            dynkin_path(&[3, 5, 3]),
            vec![vec![A(1), A(2)], vec![A(1), A(2)], vec![H3], vec![H3]],
        ),
        (
            "rank4-path-5-3-4",
            dynkin_path(&[5, 3, 4]),
            vec![vec![A(1), B(2)], vec![A(1), I2(5)], vec![B(3)], vec![H3]],
        ),
        (
            "rank4-path-5-3-5",
            dynkin_path(&[5, 3, 5]),
            vec![vec![A(1), I2(5)], vec![A(1), I2(5)], vec![H3], vec![H3]],
        ),
        (
            "rank4-star-5-3-3",
            dynkin(4, &[(0, 1, 5), (0, 2, 3), (0, 3, 3)]),
            vec![vec![A(1), A(1), A(1)], vec![A(3)], vec![H3], vec![H3]],
        ),
        (
            "rank4-cycle-4-3-3-3",
            dynkin_cycle(&[4, 3, 3, 3]),
            vec![vec![A(3)], vec![A(3)], vec![B(3)], vec![B(3)]],
        ),
        (
            "rank4-cycle-4-3-4-3",
            dynkin_cycle(&[4, 3, 4, 3]),
            vec![vec![B(3)], vec![B(3)], vec![B(3)], vec![B(3)]],
        ),
        (
            "rank4-cycle-5-3-3-3",
            dynkin_cycle(&[5, 3, 3, 3]),
            vec![vec![A(3)], vec![A(3)], vec![H3], vec![H3]],
        ),
        (
            "rank4-cycle-5-3-4-3",
            dynkin_cycle(&[5, 3, 4, 3]),
            vec![vec![B(3)], vec![B(3)], vec![H3], vec![H3]],
        ),
        (
            "rank4-cycle-5-3-5-3",
            dynkin_cycle(&[5, 3, 5, 3]),
            vec![vec![H3], vec![H3], vec![H3], vec![H3]],
        ),
    ];
    entries
        .into_iter()
        .map(|(name, graph, cf)| SimplexEntry {
            name,
            graph,
            expected_cf_max: sorted(cf),
        })
        .collect()
}

/// The five rank-5 diagrams.
pub fn simplex_rank5() -> Vec<SimplexEntry> {
    let entries: Vec<(&'static str, CoxeterGraph, Vec<Vec<FiniteType>>)> = vec![
        (
            "rank5-path-5-3-3-3",
            dynkin_path(&[5, 3, 3, 3]),
            vec![
                vec![A(4)],
                vec![H4],
                vec![A(1), A(3)],
                vec![A(2), I2(5)],
                vec![A(1), H3],
            ],
        ),
        (
            "rank5-path-5-3-3-4",
            dynkin_path(&[5, 3, 3, 4]),
            vec![
                vec![B(4)],
                vec![H4],
                vec![A(1), B(3)],
                vec![B(2), I2(5)],
                vec![A(1), H3],
            ],
        ),
        (
            "rank5-path-5-3-3-5",
            dynkin_path(&[5, 3, 3, 5]),
            vec![
                vec![H4],
                vec![H4],
                vec![A(1), H3],
                vec![A(1), H3],
                vec![I2(5), I2(5)],
            ],
        ),
        (
            "rank5-branch-5-3-3-3",
            // path 0-1-2-3 with labels 3,3,5 and a leaf 4 attached to 1
            dynkin(5, &[(0, 1, 3), (1, 2, 3), (2, 3, 5), (1, 4, 3)]),
            vec![
                vec![H4],
                vec![H4],
                vec![D(4)],
                vec![A(1), A(3)],
                vec![A(1), A(1), I2(5)],
            ],
        ),
        (
            "rank5-cycle-4-3-3-3-3",
            dynkin_cycle(&[4, 3, 3, 3, 3]),
            vec![vec![A(4)], vec![A(4)], vec![B(4)], vec![B(4)], vec![F4]],
        ),
    ];
    entries
        .into_iter()
        .map(|(name, graph, cf)| SimplexEntry {
            name,
            graph,
            expected_cf_max: sorted(cf),
        })
        .collect()
}

/// Hyperbolic triangle test: `1/p + 1/q + 1/r < 1`.
pub fn is_hyperbolic_triangle(p: u32, q: u32, r: u32) -> bool {
    // q*r + p*r + p*q < p*q*r, in integers
    let (p, q, r) = (p as u64, q as u64, r as u64);
    q * r + p * r + p * q < p * q * r
}

/// Membership in the cocompact hyperbolic simplex family: a hyperbolic
/// triangle, or one of the fourteen stored diagrams of rank 4 and 5.
pub fn is_hyperbolic_simplex(g: &CoxeterGraph) -> bool {
    match g.n() {
        3 => {
            let labels: Vec<Option<u32>> =
                vec![g.label(0, 1), g.label(1, 2), g.label(0, 2)];
            match (labels[0], labels[1], labels[2]) {
                (Some(p), Some(q), Some(r)) => is_hyperbolic_triangle(p, q, r),
                _ => false,
            }
        }
        4 => simplex_rank4()
            .iter()
            .any(|e| are_isomorphic(g, &e.graph).is_some()),
        5 => simplex_rank5()
            .iter()
            .any(|e| are_isomorphic(g, &e.graph).is_some()),
        _ => false,
    }
}

/// Recompute the maximal finite subgroups of a stored entry and compare to
/// the expected table.
pub fn verify_simplex_entry(entry: &SimplexEntry) -> bool {
    let a = Analyzer::new(&entry.graph);
    let mut got: Vec<Vec<FiniteType>> = a
        .cf_max()
        .classes
        .into_iter()
        .map(|c| c.types)
        .collect();
    got.sort();
    got == entry.expected_cf_max
}

/// Distinct canonical forms of the stored rank-4 and rank-5 diagrams (the
/// stored tables must be duplicate-free).
pub fn stored_canonical_forms() -> Vec<Vec<u8>> {
    simplex_rank4()
        .iter()
        .chain(simplex_rank5().iter())
        .map(|e| canonical_form(&e.graph))
        .collect()
}
