//! Membership tests for the families of Coxeter groups known to be
//! recoverable (exactly or up to finite ambiguity) from their profinite
//! completion, vertex-count bounds for genus searches, and the two
//! implemented graph moves that preserve the group up to isomorphism.

use serde::Serialize;

use crate::analysis::Analyzer;
use crate::classify::product_pseudo_rank;
use crate::error::{Error, Result};
use crate::graph::{CoxeterGraph, VertexSet};
use crate::invariants::{
    is_extra_large, is_fc, is_hyperbolic, is_odd, is_virtually_abelian, is_virtually_free,
    is_virtually_surface, labels_divisible_by_4,
};
use crate::tables::is_hyperbolic_simplex;

/// A family with a known recoverability guarantee, together with a short
/// human-readable description for reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyMatch {
    pub key: &'static str,
    pub description: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Unknown,
    AlmostRigid,
    Rigid,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyVerdict {
    pub regular_polygon_reflection: bool,
    pub hyperbolic_simplex: bool,
    pub virtually_abelian: bool,
    pub odd_forest: bool,
    pub labels_div_4: bool,
    pub rank_le_3: bool,
    pub rank4_equal_label: bool,
    pub complete_equal_label: bool,
    pub hyperbolic_fc: bool,
    pub virtually_free: bool,
    pub virtually_surface: bool,
    pub odd: bool,
    pub extra_large: bool,
    pub verdict: Verdict,
    /// Families matched, strongest guarantee first.
    pub matched: Vec<FamilyMatch>,
}

/// `g` is a single cycle with all labels equal and the associated polygon is
/// hyperbolic: angle sum `n * pi/m` below `(n-2) * pi`.
fn is_regular_hyperbolic_polygon(g: &CoxeterGraph) -> bool {
    let n = g.n();
    if n < 3 || !g.is_connected() {
        return false;
    }
    let edges = g.edges();
    if edges.len() != n {
        return false;
    }
    let mut degree = vec![0usize; n];
    for &(i, j, _) in &edges {
        degree[i] += 1;
        degree[j] += 1;
    }
    if degree.iter().any(|&d| d != 2) {
        return false;
    }
    let m = edges[0].2;
    if edges.iter().any(|&(_, _, l)| l != m) {
        return false;
    }
    (n as u64) < (m as u64) * (n as u64 - 2)
}

fn is_forest(g: &CoxeterGraph) -> bool {
    g.edge_count() + g.components().len() == g.n()
}

fn is_complete(g: &CoxeterGraph) -> bool {
    g.edge_count() == g.n() * (g.n().max(1) - 1) / 2
}

/// All edge labels equal to some `n` with `n` not of the form `4k+2`, `k >= 1`.
fn constant_label_not_twice_odd(g: &CoxeterGraph) -> Option<u32> {
    let labels = g.edge_labels();
    let first = *labels.first()?;
    if labels.iter().any(|&l| l != first) {
        return None;
    }
    if first > 2 && first % 4 == 2 {
        return None;
    }
    Some(first)
}

pub fn family_membership(g: &CoxeterGraph) -> FamilyVerdict {
    let a = Analyzer::new(g);
    let hyperbolic = is_hyperbolic(&a);
    let fc = is_fc(&a);
    let odd = is_odd(g);

    let regular_polygon_reflection = is_regular_hyperbolic_polygon(g);
    let hyperbolic_simplex = is_hyperbolic_simplex(g);
    let virtually_abelian = is_virtually_abelian(&a);
    let odd_forest = odd && is_forest(g);
    let labels_div_4 = labels_divisible_by_4(g);
    let rank_le_3 = g.n() <= 3;
    let rank4_equal_label =
        g.n() == 4 && g.is_connected() && constant_label_not_twice_odd(g).is_some();
    let complete_equal_label = is_complete(g) && constant_label_not_twice_odd(g).is_some();
    let hyperbolic_fc = hyperbolic && fc;
    let virtually_free = is_virtually_free(&a);
    let virtually_surface = is_virtually_surface(&a);
    let extra_large = is_extra_large(g);

    let mut matched = Vec::new();
    let rigid: [(bool, &'static str, &'static str); 8] = [
        (
            regular_polygon_reflection,
            "regular_polygon_reflection",
            "reflection group of a regular hyperbolic polygon",
        ),
        (
            hyperbolic_simplex,
            "hyperbolic_simplex",
            "cocompact hyperbolic simplex group",
        ),
        (virtually_abelian, "virtually_abelian", "virtually abelian"),
        (odd_forest, "odd_forest", "every component an odd-labeled tree"),
        (labels_div_4, "labels_div_4", "all edge labels divisible by 4"),
        (rank_le_3, "rank_le_3", "at most three generators"),
        (
            rank4_equal_label,
            "rank4_equal_label",
            "four generators, connected, constant edge label not twice an odd number",
        ),
        (
            complete_equal_label,
            "complete_equal_label",
            "complete graph with constant edge label not twice an odd number",
        ),
    ];
    let almost: [(bool, &'static str, &'static str); 5] = [
        (
            hyperbolic_fc,
            "hyperbolic_fc",
            "word-hyperbolic with every clique spherical",
        ),
        (virtually_free, "virtually_free", "virtually free"),
        (virtually_surface, "virtually_surface", "virtually a surface group"),
        (odd, "odd", "all edge labels odd"),
        (extra_large, "extra_large", "all edge labels at least five"),
    ];
    for (hit, key, description) in rigid {
        if hit {
            matched.push(FamilyMatch { key, description });
        }
    }
    let any_rigid = !matched.is_empty();
    for (hit, key, description) in almost {
        if hit {
            matched.push(FamilyMatch { key, description });
        }
    }
    let verdict = if any_rigid {
        Verdict::Rigid
    } else if !matched.is_empty() {
        Verdict::AlmostRigid
    } else {
        Verdict::Unknown
    };

    FamilyVerdict {
        regular_polygon_reflection,
        hyperbolic_simplex,
        virtually_abelian,
        odd_forest,
        labels_div_4,
        rank_le_3,
        rank4_equal_label,
        complete_equal_label,
        hyperbolic_fc,
        virtually_free,
        virtually_surface,
        odd,
        extra_large,
        verdict,
        matched,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexBound {
    pub bound: usize,
    pub source: &'static str,
}

/// Vertex-count bounds that any graph defining the same group must satisfy,
/// given the label cutoff `d` (labels of any such graph lie in `{2,...,d}`).
#[derive(Clone, Debug, Serialize)]
pub struct GenusBounds {
    pub label_bound: u32,
    pub vertex_bounds: Vec<VertexBound>,
    /// `|E| - |V|`, equal across graphs defining the same group when the
    /// labels are all odd and the graph is connected.
    pub edge_identity: Option<i64>,
    pub effective_bound: Option<usize>,
}

pub fn genus_bounds(g: &CoxeterGraph, d: u32) -> Result<GenusBounds> {
    if d < 2 {
        return Err(Error::Invalid(format!("label cutoff {d} below 2")));
    }
    if let Some(&max) = g.edge_labels().iter().max() {
        if d < max {
            return Err(Error::Invalid(format!(
                "label cutoff {d} below existing label {max}"
            )));
        }
    }
    let a = Analyzer::new(g);
    let mut vertex_bounds = Vec::new();
    let odd = is_odd(g);
    if odd {
        // |V(O)| <= |V| + (1 - 2/d)|E|, all quantities integral after floor
        let v = g.n() as u64;
        let e = g.edge_count() as u64;
        let bound = v + (d as u64 - 2) * e / d as u64;
        vertex_bounds.push(VertexBound {
            bound: bound as usize,
            source: "odd labels: vertex count bounded via the label cutoff",
        });
    }
    let edge_identity = if odd && g.is_connected() {
        Some(g.edge_count() as i64 - g.n() as i64)
    } else {
        None
    };
    if is_hyperbolic(&a) && is_fc(&a) {
        let cf = a.cf_max();
        vertex_bounds.push(VertexBound {
            bound: cf.rank_bound as usize,
            source: "hyperbolic with spherical cliques: sum of pseudo-ranks over maximal finite subgroups",
        });
    }
    if is_extra_large(g) {
        let classes = a.maximal_spherical().len();
        vertex_bounds.push(VertexBound {
            bound: 3 * classes,
            source: "extra large: three vertices per maximal finite subgroup",
        });
    }
    let effective_bound = vertex_bounds.iter().map(|b| b.bound).min();
    Ok(GenusBounds {
        label_bound: d,
        vertex_bounds,
        edge_identity,
        effective_bound,
    })
}

/// Default label cutoff when the user supplies none: the order of the
/// largest finite standard subgroup.  This is a heuristic stand-in for the
/// group-theoretic quantity the bounds are stated with, not that quantity.
pub fn default_label_cutoff(g: &CoxeterGraph) -> u32 {
    let a = Analyzer::new(g);
    let max_label = g.edge_labels().iter().copied().max().unwrap_or(2);
    let max_order = a
        .cf_max()
        .classes
        .iter()
        .map(|c| c.order)
        .max()
        .unwrap_or(2);
    max_label.max(max_order.min(u32::MAX as u128) as u32)
}

/// Rewrite `g` into a normal form under two moves that preserve the group up
/// to isomorphism:
///
/// 1. a whole component that is a triangle with labels `{2, 2, odd}` becomes
///    a single edge labeled twice the odd label;
/// 2. a component that is a tree with all labels odd becomes a path carrying
///    the same labels in sorted order.
///
/// Equal normal forms (up to graph isomorphism) certify isomorphic groups;
/// unequal normal forms certify nothing.
pub fn known_iso_normalize(g: &CoxeterGraph) -> CoxeterGraph {
    let mut names: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, usize, u32)> = Vec::new();

    let push_vertex = |names: &mut Vec<String>, name: &str| -> usize {
        names.push(name.to_string());
        names.len() - 1
    };

    for comp in g.components() {
        let verts: Vec<usize> = comp.iter().collect();
        let sub_edges: Vec<(usize, usize, u32)> = g
            .edges()
            .into_iter()
            .filter(|&(i, _, _)| comp.contains(i))
            .collect();

        // move 1: triangle with labels {2, 2, odd >= 3}
        if verts.len() == 3 && sub_edges.len() == 3 {
            let mut labels: Vec<u32> = sub_edges.iter().map(|&(_, _, l)| l).collect();
            labels.sort();
            if labels[0] == 2 && labels[1] == 2 && labels[2] >= 3 && labels[2] % 2 == 1 {
                let u = push_vertex(&mut names, g.name(verts[0]));
                let v = push_vertex(&mut names, g.name(verts[1]));
                edges.push((u, v, 2 * labels[2]));
                continue;
            }
        }

        // move 2: odd tree -> sorted-label path
        let all_odd = sub_edges.iter().all(|&(_, _, l)| l % 2 == 1 && l >= 3);
        let is_tree = sub_edges.len() + 1 == verts.len();
        if all_odd && is_tree && verts.len() >= 3 {
            let base: Vec<usize> = verts
                .iter()
                .map(|&v| push_vertex(&mut names, g.name(v)))
                .collect();
            let mut labels: Vec<u32> = sub_edges.iter().map(|&(_, _, l)| l).collect();
            labels.sort();
            for (k, &l) in labels.iter().enumerate() {
                edges.push((base[k], base[k + 1], l));
            }
            continue;
        }

        // untouched component
        let base: Vec<usize> = verts
            .iter()
            .map(|&v| push_vertex(&mut names, g.name(v)))
            .collect();
        let pos = |v: usize| verts.iter().position(|&w| w == v).unwrap();
        for (i, j, l) in sub_edges {
            edges.push((base[pos(i)], base[pos(j)], l));
        }
    }
    CoxeterGraph::new(names, &edges).expect("rewrite of a valid graph stays valid")
}

/// Sum of pseudo-ranks of the finite standard subgroup on `set`.
pub fn pseudo_rank_of(a: &Analyzer, set: VertexSet) -> u32 {
    product_pseudo_rank(&a.finite_types_of(set))
}
