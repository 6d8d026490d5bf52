//! Group invariants computed from the defining graph, and the aggregated
//! invariant vector used for comparisons and genus searches.
//!
//! Every field of [`InvariantVector`] carries a profinite status:
//!
//! * `General`: equal for any two Coxeter groups with isomorphic profinite
//!   completions.
//! * `Conditional`: equal whenever a stated side condition holds for both
//!   groups.
//! * `IsoInvariantOnly`: an isomorphism invariant of the group (or graph)
//!   with no profinite guarantee; never used to declare two groups
//!   profinitely distinguished.

use crate::analysis::{Analyzer, CfMaxReport};
use crate::classify::{product_order, AffineType, FiniteType, IrreducibleType};
use crate::graph::{CoxeterGraph, VertexSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Number of ends of the group.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Ends {
    #[serde(rename = "zero")]
    Zero,
    #[serde(rename = "one")]
    One,
    #[serde(rename = "two")]
    Two,
    #[serde(rename = "infinitely_many")]
    Infinity,
}

/// Decomposition of one connected component of the graph into its direct
/// factors (Dynkin components), sorted into spherical / affine / indefinite
/// parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDecomposition {
    pub vertices: Vec<String>,
    pub spherical: Vec<FiniteType>,
    pub affine: Vec<AffineType>,
    /// Vertices lying in indefinite (neither finite nor affine) factors.
    pub generic_vertices: Vec<String>,
}

/// Product/free-product structure of the group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    /// One entry per connected component of the Coxeter graph.
    pub components: Vec<ComponentDecomposition>,
    /// More than one component: the group is a nontrivial free product.
    pub free_product: bool,
}

/// Data feeding the Schur multiplier formula `M(W) = Z_2^{nu + mu + xi - n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurData {
    /// Number of label-2 edges.
    pub label2_edges: usize,
    /// Classes of label-2 edges, glueing `{v,w1} ~ {v,w2}` when `m(w1,w2)`
    /// is odd.
    pub nu: usize,
    /// Number of edges with label at least 3.
    pub mu: usize,
    /// Vertex classes under the equivalence generated by odd-labeled edges;
    /// also the Z_2-rank of the abelianization.
    pub xi: usize,
    /// `nu + mu + xi - |V|`.
    pub multiplier_rank: usize,
}

fn classify_parts(
    a: &Analyzer,
    within: VertexSet,
) -> (Vec<FiniteType>, Vec<AffineType>, VertexSet) {
    let mut fin = vec![];
    let mut aff = vec![];
    let mut generic = VertexSet::EMPTY;
    for (comp, t) in a.subset_types(within) {
        match t {
            IrreducibleType::Finite(f) => fin.push(f),
            IrreducibleType::Affine(x) => aff.push(x),
            IrreducibleType::Generic => generic = generic.union(comp),
        }
    }
    fin.sort();
    aff.sort();
    (fin, aff, generic)
}

/// Direct factor structure per connected component of the graph.
pub fn decompose(a: &Analyzer) -> Decomposition {
    let comps = a.g.components();
    let components = comps
        .iter()
        .map(|&c| {
            let (spherical, affine, generic) = classify_parts(a, c);
            ComponentDecomposition {
                vertices: c.iter().map(|v| a.g.name(v).to_string()).collect(),
                spherical,
                affine,
                generic_vertices: generic.iter().map(|v| a.g.name(v).to_string()).collect(),
            }
        })
        .collect::<Vec<_>>();
    Decomposition {
        free_product: components.len() > 1,
        components,
    }
}

/// Direct factors of the *whole* group: Dynkin components of the full
/// vertex set.  (Distinct Coxeter components that are joined by no edge at
/// all fall into a common indefinite factor here unless they form the
/// infinite dihedral pair.)
pub fn global_parts(a: &Analyzer) -> (Vec<FiniteType>, Vec<AffineType>, VertexSet) {
    classify_parts(a, a.g.full_set())
}

/// Serre's property FA holds exactly when the graph is complete.
pub fn is_fa(g: &CoxeterGraph) -> bool {
    let n = g.n();
    (0..n).all(|i| (i + 1..n).all(|j| g.entry(i, j) != 0))
}

/// FC type: every clique of the graph is spherical.
pub fn is_fc(a: &Analyzer) -> bool {
    let g = a.g;
    let n = g.n();
    let adj: Vec<VertexSet> = (0..n).map(|v| g.link(v)).collect();
    for mask in 1u32..(1 << n) {
        let set = VertexSet(mask);
        let is_clique = set
            .iter()
            .all(|v| set.difference(VertexSet::singleton(v)).is_subset_of(adj[v]));
        if is_clique && !a.is_spherical(set) {
            return false;
        }
    }
    true
}

/// Word hyperbolicity: no affine sub-diagram on three or more vertices, and
/// no pair of commuting infinite standard subgroups.
pub fn is_hyperbolic(a: &Analyzer) -> bool {
    let g = a.g;
    let n = g.n();
    // (a) irreducible affine pieces of rank >= 3 inside any induced diagram
    for mask in 1u32..(1 << n) {
        let set = VertexSet(mask);
        if set.len() < 3 {
            continue;
        }
        for (comp, t) in a.subset_types(set) {
            if comp.len() >= 3 && matches!(t, IrreducibleType::Affine(_)) {
                return false;
            }
        }
    }
    // (b) commuting pair of infinite standard subgroups
    let commutant: Vec<VertexSet> = (0..n)
        .map(|v| {
            let mut c = VertexSet::EMPTY;
            for w in 0..n {
                if w != v && g.entry(v, w) == 2 {
                    c.insert(w);
                }
            }
            c
        })
        .collect();
    for mask in 1u32..(1 << n) {
        let set = VertexSet(mask);
        if a.is_spherical(set) {
            continue;
        }
        let mut comm = g.full_set().difference(set);
        for v in set.iter() {
            comm = comm.intersection(commutant[v]);
        }
        if !a.is_spherical(comm) {
            return false;
        }
    }
    true
}

/// Number of ends.
pub fn ends(a: &Analyzer) -> Ends {
    let g = a.g;
    if a.is_finite_group() {
        return Ends::Zero;
    }
    let (_fin, aff, generic) = global_parts(a);
    if generic.is_empty() && aff == [AffineType::A(1)] {
        // finite x infinite dihedral
        return Ends::Two;
    }
    // a spherical subset (possibly empty) separating the graph splits the
    // group over a finite subgroup
    for t in a.spherical_subsets() {
        let rest = g.full_set().difference(t);
        if rest.is_empty() {
            continue;
        }
        if g.coxeter_components_within(rest).len() >= 2 {
            return Ends::Infinity;
        }
    }
    Ends::One
}

/// Virtually abelian: every direct factor is finite or affine.
pub fn is_virtually_abelian(a: &Analyzer) -> bool {
    global_parts(a).2.is_empty()
}

/// Chordality of the Coxeter graph (maximum cardinality search + perfect
/// elimination check).
pub fn is_chordal(g: &CoxeterGraph) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    let adj: Vec<VertexSet> = (0..n).map(|v| g.link(v)).collect();
    let mut chosen: Vec<usize> = vec![];
    let mut in_order = vec![false; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !in_order[v])
            .max_by_key(|&v| chosen.iter().filter(|&&u| adj[v].contains(u)).count())
            .unwrap();
        chosen.push(v);
        in_order[v] = true;
    }
    // reverse order is a perfect elimination order iff the graph is chordal
    let pos: Vec<usize> = {
        let mut p = vec![0; n];
        for (i, &v) in chosen.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    for &v in &chosen {
        // neighbors of v chosen before v must contain a single latest one
        // adjacent to all the others
        let earlier: Vec<usize> = adj[v].iter().filter(|&u| pos[u] < pos[v]).collect();
        if let Some(&last) = earlier.iter().max_by_key(|&&u| pos[u]) {
            for &u in &earlier {
                if u != last && !adj[last].contains(u) {
                    return false;
                }
            }
        }
    }
    true
}

/// Virtually free: chordal graph of FC type.
pub fn is_virtually_free(a: &Analyzer) -> bool {
    is_chordal(a.g) && is_fc(a)
}

/// Virtually a surface group (including virtually Z^2): the vertex set
/// splits into a spherical part joined by label-2 edges to an induced cycle
/// carrying an infinite group.
pub fn is_virtually_surface(a: &Analyzer) -> bool {
    let g = a.g;
    let n = g.n();
    for mask in 1u32..(1 << n) {
        let cyc = VertexSet(mask);
        if cyc.len() < 3 || a.is_spherical(cyc) {
            continue;
        }
        let fin = g.full_set().difference(cyc);
        if !a.is_spherical(fin) {
            continue;
        }
        // induced cycle: connected, every vertex of degree 2 within cyc
        let degrees_ok = cyc.iter().all(|v| g.link(v).intersection(cyc).len() == 2);
        if !degrees_ok || g.coxeter_components_within(cyc).len() != 1 {
            continue;
        }
        // all cross edges labeled 2
        let cross_ok = fin
            .iter()
            .all(|f| cyc.iter().all(|c| g.entry(f, c) == 2));
        if cross_ok {
            return true;
        }
    }
    false
}

/// All edge labels odd (vacuously true without edges).
pub fn is_odd(g: &CoxeterGraph) -> bool {
    g.edges().iter().all(|&(_, _, m)| m % 2 == 1)
}

/// All edge labels even, and every label other than 2 divisible by 4.
pub fn is_strongly_even(g: &CoxeterGraph) -> bool {
    g.edges().iter().all(|&(_, _, m)| m == 2 || m % 4 == 0)
}

/// All edge labels divisible by 4.
pub fn labels_divisible_by_4(g: &CoxeterGraph) -> bool {
    g.edges().iter().all(|&(_, _, m)| m % 4 == 0)
}

/// All edge labels at least 4.
pub fn is_extra_large(g: &CoxeterGraph) -> bool {
    g.edges().iter().all(|&(_, _, m)| m >= 4)
}

/// Schur multiplier data.
pub fn schur_data(g: &CoxeterGraph) -> SchurData {
    let n = g.n();
    let edges = g.edges();
    let label2: Vec<(usize, usize)> = edges
        .iter()
        .filter(|&&(_, _, m)| m == 2)
        .map(|&(i, j, _)| (i, j))
        .collect();
    let mu = edges.iter().filter(|&&(_, _, m)| m >= 3).count();

    // union-find over label-2 edges: edges {v,w1}, {v,w2} sharing a vertex
    // merge when m(w1,w2) is odd
    let mut parent: Vec<usize> = (0..label2.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    let odd_label = |i: usize, j: usize| g.label(i, j).is_some_and(|m| m % 2 == 1);
    for a in 0..label2.len() {
        for b in a + 1..label2.len() {
            let (a1, a2) = label2[a];
            let (b1, b2) = label2[b];
            let merged = [(a1, a2, b1, b2), (a2, a1, b1, b2)]
                .iter()
                .any(|&(shared, other_a, c1, c2)| {
                    (shared == c1 && odd_label(other_a, c2))
                        || (shared == c2 && odd_label(other_a, c1))
                });
            if merged {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
    }
    let mut roots: Vec<usize> = (0..label2.len()).map(|x| find(&mut parent, x)).collect();
    roots.sort_unstable();
    roots.dedup();
    let nu = roots.len();

    // vertex classes under odd edges
    let mut vparent: Vec<usize> = (0..n).collect();
    for &(i, j, m) in &edges {
        if m % 2 == 1 {
            let (ri, rj) = (find(&mut vparent, i), find(&mut vparent, j));
            if ri != rj {
                vparent[ri] = rj;
            }
        }
    }
    let mut vroots: Vec<usize> = (0..n).map(|x| find(&mut vparent, x)).collect();
    vroots.sort_unstable();
    vroots.dedup();
    let xi = vroots.len();

    let rank = (nu + mu + xi) as i64 - n as i64;
    assert!(rank >= 0, "negative multiplier rank on {g:?}");
    SchurData {
        label2_edges: label2.len(),
        nu,
        mu,
        xi,
        multiplier_rank: rank as usize,
    }
}

/// Rational Euler characteristic: sum over spherical subsets `T` of
/// `(-1)^{|T|} / |W_T|`.
pub fn euler_characteristic(a: &Analyzer) -> BigRational {
    let mut chi = BigRational::zero();
    for t in a.spherical_subsets() {
        let order = product_order(&a.finite_types_of(t));
        let term = BigRational::new(BigInt::one(), BigInt::from(order));
        if t.len() % 2 == 0 {
            chi += term;
        } else {
            chi -= term;
        }
    }
    chi
}

/// Render a rational as `p/q` (or just `p` when integral).
pub fn rational_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Profinite status of an invariant field.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ProfiniteStatus {
    #[serde(rename = "general")]
    General,
    #[serde(rename = "conditional")]
    Conditional(&'static str),
    #[serde(rename = "iso_invariant_only")]
    IsoInvariantOnly,
}

/// Everything the library computes about one graph, in one record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantVector {
    pub vertices: usize,
    pub edges: usize,
    /// Sorted multiset of finite edge labels.
    pub edge_labels: Vec<u32>,
    /// Connected components of the graph = free factors of the group.
    pub components: usize,
    /// Finite direct factors of the whole group, sorted.
    pub spherical_types: Vec<FiniteType>,
    /// Affine direct factors of the whole group, sorted.
    pub affine_types: Vec<AffineType>,
    pub generic_vertex_count: usize,
    pub ends: Ends,
    pub fa: bool,
    pub fc: bool,
    pub hyperbolic: bool,
    pub virtually_free: bool,
    pub virtually_surface: bool,
    pub virtually_abelian: bool,
    pub odd: bool,
    pub strongly_even: bool,
    pub labels_div_4: bool,
    pub extra_large: bool,
    /// Euler characteristic as `p/q`.
    pub chi: String,
    pub schur: SchurData,
    /// Z_2-rank of the abelianization (`xi`).
    pub abelianization_rank: usize,
    pub vcd: usize,
    pub cf_max: CfMaxReport,
    /// Cycle rank `|E| - |V| + c` when all labels are odd.
    pub odd_cycle_rank: Option<usize>,
}

pub const FIELD_STATUSES: &[(&str, ProfiniteStatus)] = &[
    ("vertices", ProfiniteStatus::IsoInvariantOnly),
    ("edges", ProfiniteStatus::IsoInvariantOnly),
    ("edge_labels", ProfiniteStatus::IsoInvariantOnly),
    ("components", ProfiniteStatus::General),
    ("spherical_types", ProfiniteStatus::General),
    ("affine_types", ProfiniteStatus::General),
    ("generic_vertex_count", ProfiniteStatus::IsoInvariantOnly),
    ("ends", ProfiniteStatus::General),
    ("fa", ProfiniteStatus::General),
    ("fc", ProfiniteStatus::General),
    ("hyperbolic", ProfiniteStatus::General),
    ("virtually_free", ProfiniteStatus::General),
    ("virtually_surface", ProfiniteStatus::General),
    ("virtually_abelian", ProfiniteStatus::General),
    ("odd", ProfiniteStatus::General),
    ("strongly_even", ProfiniteStatus::IsoInvariantOnly),
    ("labels_div_4", ProfiniteStatus::IsoInvariantOnly),
    ("extra_large", ProfiniteStatus::IsoInvariantOnly),
    ("chi", ProfiniteStatus::General),
    ("schur.multiplier_rank", ProfiniteStatus::General),
    ("abelianization_rank", ProfiniteStatus::General),
    ("vcd", ProfiniteStatus::IsoInvariantOnly),
    (
        "cf_max.classes",
        ProfiniteStatus::Conditional(
            "both groups hyperbolic of FC type, or both graphs extra large",
        ),
    ),
    (
        "cf_max.intersection_pattern",
        ProfiniteStatus::IsoInvariantOnly,
    ),
    (
        "odd_cycle_rank",
        ProfiniteStatus::Conditional(
            "both graphs odd and connected, one of cycle rank at most 1",
        ),
    ),
];

/// Compute the full invariant vector.
pub fn invariant_vector(a: &Analyzer) -> InvariantVector {
    let g = a.g;
    let (fin, aff, generic) = global_parts(a);
    let schur = schur_data(g);
    let odd = is_odd(g);
    let comp_count = g.components().len();
    InvariantVector {
        vertices: g.n(),
        edges: g.edge_count(),
        edge_labels: g.edge_labels(),
        components: comp_count,
        spherical_types: fin,
        affine_types: aff,
        generic_vertex_count: generic.len(),
        ends: ends(a),
        fa: is_fa(g),
        fc: is_fc(a),
        hyperbolic: is_hyperbolic(a),
        virtually_free: is_virtually_free(a),
        virtually_surface: is_virtually_surface(a),
        virtually_abelian: is_virtually_abelian(a),
        odd,
        strongly_even: is_strongly_even(g),
        labels_div_4: labels_divisible_by_4(g),
        extra_large: is_extra_large(g),
        chi: rational_string(&euler_characteristic(a)),
        abelianization_rank: schur.xi,
        schur,
        vcd: crate::topology::vcd(a),
        cf_max: a.cf_max(),
        odd_cycle_rank: if odd {
            Some(g.edge_count() + comp_count - g.n())
        } else {
            None
        },
    }
}

/// Multiset (sorted) of directly indecomposable factors of a list of finite
/// types; products of finite types are isomorphic as groups iff these
/// multisets agree.
fn indecomposable_multiset(types: &[FiniteType]) -> Vec<FiniteType> {
    let mut out: Vec<FiniteType> = types
        .iter()
        .flat_map(|t| t.indecomposable_factors())
        .collect();
    out.sort();
    out
}

/// Maximal finite subgroups compared up to abstract group isomorphism.
fn cf_classes_up_to_iso(cf: &CfMaxReport) -> Vec<Vec<FiniteType>> {
    let mut out: Vec<Vec<FiniteType>> = cf
        .classes
        .iter()
        .map(|c| indecomposable_multiset(&c.types))
        .collect();
    out.sort();
    out
}

/// One field of a comparison.
#[derive(Clone, Debug, Serialize)]
pub struct FieldComparison {
    pub field: &'static str,
    pub status: ProfiniteStatus,
    pub equal: bool,
    /// Whether this field participates in the verdict (general fields
    /// always; conditional fields when their side condition holds).
    pub decisive: bool,
}

/// Result of comparing two invariant vectors.
#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub distinguished: bool,
    /// Decisive fields with unequal values.
    pub witnesses: Vec<&'static str>,
    pub fields: Vec<FieldComparison>,
}

/// Field-by-field comparison of two invariant vectors.
pub fn compare(a: &InvariantVector, b: &InvariantVector) -> CompareReport {
    let cf_condition = (a.hyperbolic && a.fc && b.hyperbolic && b.fc)
        || (a.extra_large && b.extra_large);
    let odd_rank_condition = a.odd
        && b.odd
        && a.components == 1
        && b.components == 1
        && (a.odd_cycle_rank.is_some_and(|r| r <= 1)
            || b.odd_cycle_rank.is_some_and(|r| r <= 1));
    let mut fields = vec![];
    for &(name, status) in FIELD_STATUSES {
        let equal = match name {
            "vertices" => a.vertices == b.vertices,
            "edges" => a.edges == b.edges,
            "edge_labels" => a.edge_labels == b.edge_labels,
            "components" => a.components == b.components,
            "spherical_types" => {
                indecomposable_multiset(&a.spherical_types)
                    == indecomposable_multiset(&b.spherical_types)
            }
            "affine_types" => a.affine_types == b.affine_types,
            "generic_vertex_count" => a.generic_vertex_count == b.generic_vertex_count,
            "ends" => a.ends == b.ends,
            "fa" => a.fa == b.fa,
            "fc" => a.fc == b.fc,
            "hyperbolic" => a.hyperbolic == b.hyperbolic,
            "virtually_free" => a.virtually_free == b.virtually_free,
            "virtually_surface" => a.virtually_surface == b.virtually_surface,
            "virtually_abelian" => a.virtually_abelian == b.virtually_abelian,
            "odd" => a.odd == b.odd,
            "strongly_even" => a.strongly_even == b.strongly_even,
            "labels_div_4" => a.labels_div_4 == b.labels_div_4,
            "extra_large" => a.extra_large == b.extra_large,
            "chi" => a.chi == b.chi,
            "schur.multiplier_rank" => a.schur.multiplier_rank == b.schur.multiplier_rank,
            "abelianization_rank" => a.abelianization_rank == b.abelianization_rank,
            "vcd" => a.vcd == b.vcd,
            "cf_max.classes" => cf_classes_up_to_iso(&a.cf_max) == cf_classes_up_to_iso(&b.cf_max),
            "cf_max.intersection_pattern" => {
                a.cf_max.intersection_pattern == b.cf_max.intersection_pattern
            }
            "odd_cycle_rank" => a.odd_cycle_rank == b.odd_cycle_rank,
            _ => unreachable!(),
        };
        let decisive = match status {
            ProfiniteStatus::General => true,
            ProfiniteStatus::IsoInvariantOnly => false,
            ProfiniteStatus::Conditional(_) => match name {
                "cf_max.classes" => cf_condition,
                "odd_cycle_rank" => odd_rank_condition,
                _ => false,
            },
        };
        fields.push(FieldComparison {
            field: name,
            status,
            equal,
            decisive,
        });
    }
    let witnesses: Vec<&'static str> = fields
        .iter()
        .filter(|f| f.decisive && !f.equal)
        .map(|f| f.field)
        .collect();
    CompareReport {
        distinguished: !witnesses.is_empty(),
        witnesses,
        fields,
    }
}

/// Whether `candidate` could present the same profinite completion as
/// `target`: all decisive fields agree.
pub fn profinitely_consistent(target: &InvariantVector, candidate: &InvariantVector) -> bool {
    !compare(target, candidate).distinguished
}
