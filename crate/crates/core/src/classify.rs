//! The finite and affine catalogue, and classification of connected
//! diagrams by template matching.

use crate::canon::are_isomorphic;
use crate::graph::{CoxeterGraph, DynkinDiagram, Label};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Irreducible finite types.  The dihedral identifications `I2(3) = A2`,
/// `I2(4) = B2` and `I2(6) = G2` are always normalized to the lettered tag,
/// so `I2(m)` here carries `m >= 5`, `m != 6`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum FiniteType {
    A(u32),
    B(u32),
    D(u32),
    E6,
    E7,
    E8,
    F4,
    G2,
    H3,
    H4,
    I2(u32),
}

/// Irreducible affine types, named by rank: the diagram of `~X_n` has
/// `n + 1` vertices.  `~A_1` is the infinite dihedral diagram (two vertices,
/// no Coxeter edge).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum AffineType {
    A(u32),
    B(u32),
    C(u32),
    D(u32),
    E6,
    E7,
    E8,
    F4,
    G2,
}

/// Classification verdict for a connected diagram.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum IrreducibleType {
    Finite(FiniteType),
    Affine(AffineType),
    Generic,
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E6 => write!(f, "E6"),
            FiniteType::E7 => write!(f, "E7"),
            FiniteType::E8 => write!(f, "E8"),
            FiniteType::F4 => write!(f, "F4"),
            FiniteType::G2 => write!(f, "G2"),
            FiniteType::H3 => write!(f, "H3"),
            FiniteType::H4 => write!(f, "H4"),
            FiniteType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineType::A(n) => write!(f, "~A{n}"),
            AffineType::B(n) => write!(f, "~B{n}"),
            AffineType::C(n) => write!(f, "~C{n}"),
            AffineType::D(n) => write!(f, "~D{n}"),
            AffineType::E6 => write!(f, "~E6"),
            AffineType::E7 => write!(f, "~E7"),
            AffineType::E8 => write!(f, "~E8"),
            AffineType::F4 => write!(f, "~F4"),
            AffineType::G2 => write!(f, "~G2"),
        }
    }
}

impl fmt::Display for IrreducibleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrreducibleType::Finite(t) => t.fmt(f),
            IrreducibleType::Affine(t) => t.fmt(f),
            IrreducibleType::Generic => write!(f, "generic"),
        }
    }
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

impl FiniteType {
    pub fn rank(self) -> u32 {
        match self {
            FiniteType::A(n) | FiniteType::B(n) | FiniteType::D(n) => n,
            FiniteType::E6 => 6,
            FiniteType::E7 => 7,
            FiniteType::E8 => 8,
            FiniteType::F4 | FiniteType::H4 => 4,
            FiniteType::H3 => 3,
            FiniteType::G2 | FiniteType::I2(_) => 2,
        }
    }

    /// Group order.
    pub fn order(self) -> u128 {
        match self {
            FiniteType::A(n) => factorial(n + 1),
            FiniteType::B(n) => (1u128 << n) * factorial(n),
            FiniteType::D(n) => (1u128 << (n - 1)) * factorial(n),
            FiniteType::E6 => 51_840,
            FiniteType::E7 => 2_903_040,
            FiniteType::E8 => 696_729_600,
            FiniteType::F4 => 1_152,
            FiniteType::G2 => 12,
            FiniteType::H3 => 120,
            FiniteType::H4 => 14_400,
            FiniteType::I2(m) => 2 * m as u128,
        }
    }

    /// The largest `n` such that the group contains a parabolic-free
    /// obstruction to being a rank-`< n` Coxeter group: equals the rank
    /// except for the two families with a central direct factor,
    /// `B_{2k+1} = A1 x D_{2k+1}` (as groups) and `I2(4k+2) = A1 x I2(2k+1)`.
    pub fn pseudo_rank(self) -> u32 {
        match self {
            FiniteType::B(n) if n >= 3 && n % 2 == 1 => n + 1,
            FiniteType::G2 => 3,
            FiniteType::I2(m) if m % 4 == 2 => 3,
            other => other.rank(),
        }
    }

    pub fn is_solvable(self) -> bool {
        matches!(
            self,
            FiniteType::A(1..=3)
                | FiniteType::B(2..=4)
                | FiniteType::D(4)
                | FiniteType::F4
                | FiniteType::G2
                | FiniteType::I2(_)
        )
    }

    /// Decomposition into directly indecomposable Coxeter factors:
    /// `B_{2k+1} = A1 x D_{2k+1}` and `I2(4k+2) = A1 x I2(2k+1)` as abstract
    /// groups; everything else is indecomposable.  (`D3` is reported as the
    /// isomorphic `A3`, and the dihedral factor is normalized as usual.)
    pub fn indecomposable_factors(self) -> Vec<FiniteType> {
        match self {
            FiniteType::B(n) if n >= 3 && n % 2 == 1 => {
                let d = if n == 3 {
                    FiniteType::A(3)
                } else {
                    FiniteType::D(n)
                };
                vec![FiniteType::A(1), d]
            }
            FiniteType::G2 => vec![FiniteType::A(1), FiniteType::A(2)],
            FiniteType::I2(m) if m % 4 == 2 => {
                vec![FiniteType::A(1), normalize_dihedral(m / 2)]
            }
            other => vec![other],
        }
    }
}

impl AffineType {
    /// Rank of the affine type; the diagram has `rank + 1` vertices.
    pub fn rank(self) -> u32 {
        match self {
            AffineType::A(n) | AffineType::B(n) | AffineType::C(n) | AffineType::D(n) => n,
            AffineType::E6 => 6,
            AffineType::E7 => 7,
            AffineType::E8 => 8,
            AffineType::F4 => 4,
            AffineType::G2 => 2,
        }
    }
}

/// Normalize a dihedral label to the lettered tag where one exists.
pub fn normalize_dihedral(m: u32) -> FiniteType {
    match m {
        3 => FiniteType::A(2),
        4 => FiniteType::B(2),
        6 => FiniteType::G2,
        m => FiniteType::I2(m),
    }
}

fn fin(m: u32) -> Label {
    Label::Finite(m)
}

/// Coxeter graph of a finite type (built from its Dynkin diagram).
pub fn finite_template(t: FiniteType) -> CoxeterGraph {
    let edges: Vec<(usize, usize, Label)> = match t {
        FiniteType::A(n) => (0..n as usize - 1).map(|i| (i, i + 1, fin(3))).collect(),
        FiniteType::B(n) => {
            let n = n as usize;
            let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1, fin(3))).collect();
            e.push((n - 2, n - 1, fin(4)));
            e
        }
        FiniteType::D(n) => {
            let n = n as usize;
            // path 0..n-3 with a fork {n-2, n-1} at vertex n-3
            let mut e: Vec<_> = (0..n - 3).map(|i| (i, i + 1, fin(3))).collect();
            e.push((n - 3, n - 2, fin(3)));
            e.push((n - 3, n - 1, fin(3)));
            e
        }
        FiniteType::E6 => branch_diagram(5, 2),
        FiniteType::E7 => branch_diagram(6, 2),
        FiniteType::E8 => branch_diagram(7, 2),
        FiniteType::F4 => vec![(0, 1, fin(3)), (1, 2, fin(4)), (2, 3, fin(3))],
        FiniteType::G2 => vec![(0, 1, fin(6))],
        FiniteType::H3 => vec![(0, 1, fin(5)), (1, 2, fin(3))],
        FiniteType::H4 => vec![(0, 1, fin(5)), (1, 2, fin(3)), (2, 3, fin(3))],
        FiniteType::I2(m) => vec![(0, 1, fin(m))],
    };
    let n = t.rank() as usize;
    DynkinDiagram::numbered(n, &edges).unwrap().to_coxeter()
}

/// Path `0..path_len` of label-3 edges plus one extra vertex attached to
/// `branch_at`; the extra vertex gets index `path_len`.
fn branch_diagram(path_len: usize, branch_at: usize) -> Vec<(usize, usize, Label)> {
    let mut e: Vec<_> = (0..path_len - 1).map(|i| (i, i + 1, fin(3))).collect();
    e.push((branch_at, path_len, fin(3)));
    e
}

/// Coxeter graph of an affine type (built from its Dynkin diagram).
pub fn affine_template(t: AffineType) -> CoxeterGraph {
    let (nv, edges): (usize, Vec<(usize, usize, Label)>) = match t {
        AffineType::A(1) => (2, vec![(0, 1, Label::Infinity)]),
        AffineType::A(n) => {
            let k = n as usize + 1;
            ((k), (0..k).map(|i| (i, (i + 1) % k, fin(3))).collect())
        }
        AffineType::B(n) => {
            let k = n as usize + 1;
            // fork {0,1} at vertex 2, then a path ending in a label-4 edge
            let mut e = vec![(0, 2, fin(3)), (1, 2, fin(3))];
            e.extend((2..k - 2).map(|i| (i, i + 1, fin(3))));
            e.push((k - 2, k - 1, fin(4)));
            (k, e)
        }
        AffineType::C(n) => {
            let k = n as usize + 1;
            let mut e = vec![(0, 1, fin(4))];
            e.extend((1..k - 2).map(|i| (i, i + 1, fin(3))));
            e.push((k - 2, k - 1, fin(4)));
            (k, e)
        }
        AffineType::D(n) => {
            let k = n as usize + 1;
            // forks at both ends of the path 2..k-3
            let mut e = vec![(0, 2, fin(3)), (1, 2, fin(3))];
            e.extend((2..k - 3).map(|i| (i, i + 1, fin(3))));
            e.push((k - 3, k - 2, fin(3)));
            e.push((k - 3, k - 1, fin(3)));
            (k, e)
        }
        AffineType::E6 => {
            // three arms of length 2 from a central vertex
            let e = vec![
                (0, 1, fin(3)),
                (1, 6, fin(3)),
                (2, 3, fin(3)),
                (3, 6, fin(3)),
                (4, 5, fin(3)),
                (5, 6, fin(3)),
            ];
            (7, e)
        }
        AffineType::E7 => {
            // path of 7 with a branch at the middle vertex
            let mut e: Vec<_> = (0..6).map(|i| (i, i + 1, fin(3))).collect();
            e.push((3, 7, fin(3)));
            (8, e)
        }
        AffineType::E8 => {
            // arms of lengths 1, 2 and 5
            let mut e: Vec<_> = (0..7).map(|i| (i, i + 1, fin(3))).collect();
            e.push((2, 8, fin(3)));
            (9, e)
        }
        AffineType::F4 => (
            5,
            vec![
                (0, 1, fin(3)),
                (1, 2, fin(3)),
                (2, 3, fin(4)),
                (3, 4, fin(3)),
            ],
        ),
        AffineType::G2 => (3, vec![(0, 1, fin(3)), (1, 2, fin(6))]),
    };
    DynkinDiagram::numbered(nv, &edges).unwrap().to_coxeter()
}

/// All finite types with the given rank and, for dihedrals, `m <= max_label`.
pub fn finite_candidates(rank: usize) -> Vec<FiniteType> {
    let n = rank as u32;
    let mut out = vec![];
    match rank {
        0 => {}
        1 => out.push(FiniteType::A(1)),
        2 => {} // dihedrals are classified directly from the label
        _ => {
            out.push(FiniteType::A(n));
            out.push(FiniteType::B(n));
            if n >= 4 {
                out.push(FiniteType::D(n));
            }
            match rank {
                3 => out.push(FiniteType::H3),
                4 => {
                    out.push(FiniteType::F4);
                    out.push(FiniteType::H4);
                }
                6 => out.push(FiniteType::E6),
                7 => out.push(FiniteType::E7),
                8 => out.push(FiniteType::E8),
                _ => {}
            }
        }
    }
    out
}

/// All affine types whose diagram has `nv` vertices.
pub fn affine_candidates(nv: usize) -> Vec<AffineType> {
    let mut out = vec![];
    if nv < 2 {
        return out;
    }
    let n = nv as u32 - 1;
    out.push(AffineType::A(n)); // ~A1 (nv = 2) through ~A{nv-1}
    if n >= 3 {
        out.push(AffineType::B(n));
    }
    if n >= 2 {
        out.push(AffineType::C(n));
    }
    if n >= 4 {
        out.push(AffineType::D(n));
    }
    match nv {
        3 => out.push(AffineType::G2),
        5 => out.push(AffineType::F4),
        7 => out.push(AffineType::E6),
        8 => out.push(AffineType::E7),
        9 => out.push(AffineType::E8),
        _ => {}
    }
    out
}

/// Classify a diagram that is connected in the Dynkin sense.  Callers pass
/// the induced Coxeter graph of a single Dynkin component.
pub fn classify_component(g: &CoxeterGraph) -> IrreducibleType {
    match g.n() {
        0 => return IrreducibleType::Generic,
        1 => return IrreducibleType::Finite(FiniteType::A(1)),
        2 => {
            return match g.label(0, 1) {
                None => IrreducibleType::Affine(AffineType::A(1)),
                Some(2) => IrreducibleType::Generic, // not Dynkin-connected
                Some(m) => IrreducibleType::Finite(normalize_dihedral(m)),
            };
        }
        _ => {}
    }
    // cheap screen: finite and affine diagrams (other than ~A1) only carry
    // labels from {2,...,6}
    let mut has_infinity = false;
    let mut biggest = 0u32;
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            match g.label(i, j) {
                None => has_infinity = true,
                Some(m) => biggest = biggest.max(m),
            }
        }
    }
    if has_infinity || biggest > 6 {
        return IrreducibleType::Generic;
    }
    for t in finite_candidates(g.n()) {
        if are_isomorphic(g, &finite_template(t)).is_some() {
            return IrreducibleType::Finite(t);
        }
    }
    for t in affine_candidates(g.n()) {
        if are_isomorphic(g, &affine_template(t)).is_some() {
            return IrreducibleType::Affine(t);
        }
    }
    IrreducibleType::Generic
}

/// Order of a direct product of finite types.
pub fn product_order(types: &[FiniteType]) -> u128 {
    types.iter().map(|t| t.order()).product()
}

/// Pseudo-rank of a direct product of finite types (sums over factors).
pub fn product_pseudo_rank(types: &[FiniteType]) -> u32 {
    types.iter().map(|t| t.pseudo_rank()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_normalization() {
        assert_eq!(normalize_dihedral(3), FiniteType::A(2));
        assert_eq!(normalize_dihedral(4), FiniteType::B(2));
        assert_eq!(normalize_dihedral(6), FiniteType::G2);
        assert_eq!(normalize_dihedral(7), FiniteType::I2(7));
    }

    #[test]
    fn orders() {
        assert_eq!(FiniteType::A(3).order(), 24);
        assert_eq!(FiniteType::A(4).order(), 120);
        assert_eq!(FiniteType::B(3).order(), 48);
        assert_eq!(FiniteType::D(4).order(), 192);
        assert_eq!(FiniteType::F4.order(), 1_152);
        assert_eq!(FiniteType::E6.order(), 51_840);
        assert_eq!(FiniteType::E7.order(), 2_903_040);
        assert_eq!(FiniteType::E8.order(), 696_729_600);
        assert_eq!(FiniteType::H3.order(), 120);
        assert_eq!(FiniteType::H4.order(), 14_400);
        assert_eq!(FiniteType::G2.order(), 12);
        assert_eq!(FiniteType::I2(7).order(), 14);
    }

    #[test]
    fn pseudo_ranks() {
        assert_eq!(FiniteType::A(5).pseudo_rank(), 5);
        assert_eq!(FiniteType::B(2).pseudo_rank(), 2);
        assert_eq!(FiniteType::B(3).pseudo_rank(), 4);
        assert_eq!(FiniteType::B(4).pseudo_rank(), 4);
        assert_eq!(FiniteType::B(5).pseudo_rank(), 6);
        assert_eq!(FiniteType::G2.pseudo_rank(), 3);
        assert_eq!(FiniteType::I2(10).pseudo_rank(), 3);
        assert_eq!(FiniteType::I2(8).pseudo_rank(), 2);
        assert_eq!(FiniteType::I2(5).pseudo_rank(), 2);
        assert_eq!(FiniteType::H4.pseudo_rank(), 4);
    }

    #[test]
    fn solvability() {
        for t in [
            FiniteType::A(1),
            FiniteType::A(2),
            FiniteType::A(3),
            FiniteType::B(2),
            FiniteType::B(3),
            FiniteType::B(4),
            FiniteType::D(4),
            FiniteType::F4,
            FiniteType::G2,
            FiniteType::I2(9),
        ] {
            assert!(t.is_solvable(), "{t}");
        }
        for t in [
            FiniteType::A(4),
            FiniteType::A(5),
            FiniteType::B(5),
            FiniteType::D(5),
            FiniteType::E6,
            FiniteType::H3,
            FiniteType::H4,
        ] {
            assert!(!t.is_solvable(), "{t}");
        }
    }

    #[test]
    fn classify_finite_templates() {
        let all = [
            FiniteType::A(1),
            FiniteType::A(2),
            FiniteType::A(5),
            FiniteType::B(2),
            FiniteType::B(6),
            FiniteType::D(4),
            FiniteType::D(7),
            FiniteType::E6,
            FiniteType::E7,
            FiniteType::E8,
            FiniteType::F4,
            FiniteType::G2,
            FiniteType::H3,
            FiniteType::H4,
            FiniteType::I2(5),
            FiniteType::I2(11),
        ];
        for t in all {
            assert_eq!(
                classify_component(&finite_template(t)),
                IrreducibleType::Finite(t),
                "{t}"
            );
        }
    }

    #[test]
    fn classify_affine_templates() {
        let all = [
            AffineType::A(1),
            AffineType::A(2),
            AffineType::A(4),
            AffineType::B(3),
            AffineType::B(5),
            AffineType::C(2),
            AffineType::C(4),
            AffineType::D(4),
            AffineType::D(6),
            AffineType::E6,
            AffineType::E7,
            AffineType::E8,
            AffineType::F4,
            AffineType::G2,
        ];
        for t in all {
            assert_eq!(
                classify_component(&affine_template(t)),
                IrreducibleType::Affine(t),
                "{t}"
            );
        }
    }

    #[test]
    fn classify_generic_examples() {
        // a label-7 triangle is hyperbolic, not in the catalogue
        let g = CoxeterGraph::numbered(3, &[(0, 1, 7), (1, 2, 7), (0, 2, 7)]).unwrap();
        assert_eq!(classify_component(&g), IrreducibleType::Generic);
        // path with an infinite gap of 3 vertices: 0-1 labeled 3, 0-2 missing
        let g = CoxeterGraph::numbered(3, &[(0, 1, 3), (1, 2, 2)]).unwrap();
        // (Dynkin component structure is the caller's business; the full
        // graph here contains an infinity edge and cannot be finite/affine)
        assert_eq!(classify_component(&g), IrreducibleType::Generic);
    }

    #[test]
    fn indecomposable_factors() {
        assert_eq!(
            FiniteType::B(3).indecomposable_factors(),
            vec![FiniteType::A(1), FiniteType::A(3)]
        );
        assert_eq!(
            FiniteType::B(5).indecomposable_factors(),
            vec![FiniteType::A(1), FiniteType::D(5)]
        );
        assert_eq!(
            FiniteType::G2.indecomposable_factors(),
            vec![FiniteType::A(1), FiniteType::A(2)]
        );
        assert_eq!(
            FiniteType::I2(10).indecomposable_factors(),
            vec![FiniteType::A(1), FiniteType::I2(5)]
        );
        assert_eq!(
            FiniteType::I2(14).indecomposable_factors(),
            vec![FiniteType::A(1), FiniteType::I2(7)]
        );
        assert_eq!(FiniteType::B(4).indecomposable_factors(), vec![FiniteType::B(4)]);
    }
}
