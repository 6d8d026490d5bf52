//! The cosine Gram form of a Coxeter system and its signature, used as an
//! independent oracle for the catalogue-based classification.

use crate::classify::IrreducibleType;
use crate::graph::CoxeterGraph;
use serde::{Deserialize, Serialize};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Coarse verdict from the Gram signature.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum GramVerdict {
    /// Positive definite: finite group.
    Finite,
    /// Positive semidefinite with a one-dimensional kernel: irreducible
    /// affine (for connected diagrams).
    Affine,
    /// Anything else.
    Generic,
}

/// Symmetric Gram matrix `b(v,v) = 1`, `b(v,w) = -cos(pi / m(v,w))`, with
/// `-1` for a missing edge (`m = infinity`).
pub fn gram_matrix(g: &CoxeterGraph) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut b = vec![vec![0.0; n]; n];
    for i in 0..n {
        b[i][i] = 1.0;
        for j in 0..n {
            if i == j {
                continue;
            }
            b[i][j] = match g.label(i, j) {
                Some(m) => -(std::f64::consts::PI / m as f64).cos(),
                None => -1.0,
            };
        }
    }
    b
}

/// Eigenvalues of a symmetric matrix by the cyclic Jacobi method, sorted
/// ascending.
pub fn symmetric_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += m[i][j] * m[i][j];
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eig
}

/// Signature-based verdict with tolerance `eps` for zero eigenvalues.
pub fn classify_via_gram(g: &CoxeterGraph, eps: f64) -> GramVerdict {
    let eig = symmetric_eigenvalues(&gram_matrix(g));
    let negatives = eig.iter().filter(|&&x| x < -eps).count();
    let zeros = eig.iter().filter(|&&x| x.abs() <= eps).count();
    if negatives > 0 {
        GramVerdict::Generic
    } else if zeros == 0 {
        GramVerdict::Finite
    } else if zeros == 1 {
        GramVerdict::Affine
    } else {
        GramVerdict::Generic
    }
}

/// Collapse a catalogue classification to the Gram-level verdict.
pub fn coarse_verdict(t: IrreducibleType) -> GramVerdict {
    match t {
        IrreducibleType::Finite(_) => GramVerdict::Finite,
        IrreducibleType::Affine(_) => GramVerdict::Affine,
        IrreducibleType::Generic => GramVerdict::Generic,
    }
}

/// Cross-check the catalogue classification of a connected diagram against
/// the Gram signature.  A disagreement means a table bug, which must never
/// be papered over: panic.
pub fn check_against_gram(g: &CoxeterGraph, t: IrreducibleType, eps: f64) {
    let gram = classify_via_gram(g, eps);
    let table = coarse_verdict(t);
    if gram != table {
        panic!(
            "classification disagreement on {g:?}: catalogue says {t} ({table:?}), \
             Gram signature says {gram:?}"
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{affine_template, classify_component, finite_template, AffineType, FiniteType};

    #[test]
    fn eigenvalues_of_diagonal() {
        let a = vec![vec![3.0, 0.0], vec![0.0, -1.0]];
        let eig = symmetric_eigenvalues(&a);
        assert!((eig[0] + 1.0).abs() < 1e-12);
        assert!((eig[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_of_2x2() {
        // [[1, -1/2], [-1/2, 1]] has eigenvalues 1/2 and 3/2
        let a = vec![vec![1.0, -0.5], vec![-0.5, 1.0]];
        let eig = symmetric_eigenvalues(&a);
        assert!((eig[0] - 0.5).abs() < 1e-12);
        assert!((eig[1] - 1.5).abs() < 1e-12);
    }

    #[test]
    fn finite_templates_are_positive_definite() {
        for t in [
            FiniteType::A(4),
            FiniteType::B(5),
            FiniteType::D(6),
            FiniteType::E6,
            FiniteType::E7,
            FiniteType::E8,
            FiniteType::F4,
            FiniteType::G2,
            FiniteType::H3,
            FiniteType::H4,
            FiniteType::I2(7),
        ] {
            assert_eq!(
                classify_via_gram(&finite_template(t), DEFAULT_TOLERANCE),
                GramVerdict::Finite,
                "{t}"
            );
        }
    }

    #[test]
    fn affine_templates_have_corank_one() {
        for t in [
            AffineType::A(1),
            AffineType::A(3),
            AffineType::B(4),
            AffineType::C(3),
            AffineType::D(5),
            AffineType::E6,
            AffineType::E7,
            AffineType::E8,
            AffineType::F4,
            AffineType::G2,
        ] {
            assert_eq!(
                classify_via_gram(&affine_template(t), DEFAULT_TOLERANCE),
                GramVerdict::Affine,
                "{t}"
            );
        }
    }

    #[test]
    fn hyperbolic_triangle_is_generic() {
        let g = CoxeterGraph::numbered(3, &[(0, 1, 2), (1, 2, 3), (0, 2, 7)]).unwrap();
        assert_eq!(
            classify_via_gram(&g, DEFAULT_TOLERANCE),
            GramVerdict::Generic
        );
    }

    #[test]
    fn cross_check_accepts_catalogue() {
        let g = finite_template(FiniteType::E8);
        check_against_gram(&g, classify_component(&g), DEFAULT_TOLERANCE);
    }
}
