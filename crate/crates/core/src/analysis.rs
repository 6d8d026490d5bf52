//! Per-graph analysis state: memoized classification of induced diagrams,
//! the table of spherical subsets, and the conjugacy data of maximal finite
//! standard subgroups.

use crate::classify::{
    classify_component, product_order, product_pseudo_rank, FiniteType, IrreducibleType,
};
use crate::graph::{CoxeterGraph, VertexSet};
use serde::{Deserialize, Serialize};
use std::cell::RefCell;
use std::collections::HashMap;

/// One conjugacy class of maximal finite standard subgroups, i.e. one
/// maximal spherical subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfClass {
    /// Vertex names of the spherical subset, in graph order.
    pub vertices: Vec<String>,
    /// Irreducible factors, sorted.
    pub types: Vec<FiniteType>,
    pub order: u128,
    pub pseudo_rank: u32,
}

/// Maximal finite standard subgroups and the rank bound they imply.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfMaxReport {
    pub classes: Vec<CfClass>,
    /// Any graph defining the same group has at most this many vertices
    /// (sum of pseudo-ranks over the classes).
    pub rank_bound: u32,
    /// Isomorphism-invariant fingerprint of the pairwise intersection
    /// pattern: for every unordered pair of classes, the two type multisets
    /// (sorted) together with the types of the intersection.
    pub intersection_pattern: Vec<(Vec<FiniteType>, Vec<FiniteType>, Vec<FiniteType>)>,
}

pub struct Analyzer<'g> {
    pub g: &'g CoxeterGraph,
    spherical: Vec<bool>,
    types: RefCell<HashMap<VertexSet, IrreducibleType>>,
}

impl<'g> Analyzer<'g> {
    pub fn new(g: &'g CoxeterGraph) -> Self {
        let mut a = Analyzer {
            g,
            spherical: vec![],
            types: RefCell::new(HashMap::new()),
        };
        a.build_spherical_table();
        a
    }

    /// Type of a single Dynkin component (memoized).
    pub fn component_type(&self, comp: VertexSet) -> IrreducibleType {
        if let Some(t) = self.types.borrow().get(&comp) {
            return *t;
        }
        let t = classify_component(&self.g.induced_subgraph(comp));
        self.types.borrow_mut().insert(comp, t);
        t
    }

    /// Dynkin components of a subset together with their types.
    pub fn subset_types(&self, set: VertexSet) -> Vec<(VertexSet, IrreducibleType)> {
        self.g
            .dynkin_components_within(set)
            .into_iter()
            .map(|c| (c, self.component_type(c)))
            .collect()
    }

    fn build_spherical_table(&mut self) {
        let n = self.g.n();
        let total = 1usize << n;
        let mut sph = vec![false; total];
        sph[0] = true;
        for mask in 1..total {
            // monotonicity: every subset of a spherical set is spherical, so
            // only classify when all one-smaller subsets pass
            let mut candidate = true;
            let mut bits = mask;
            while bits != 0 {
                let low = bits & bits.wrapping_neg();
                if !sph[mask & !low] {
                    candidate = false;
                    break;
                }
                bits &= bits - 1;
            }
            if !candidate {
                continue;
            }
            sph[mask] = self
                .subset_types(VertexSet(mask as u32))
                .iter()
                .all(|(_, t)| matches!(t, IrreducibleType::Finite(_)));
        }
        self.spherical = sph;
    }

    pub fn is_spherical(&self, set: VertexSet) -> bool {
        self.spherical[set.0 as usize]
    }

    /// Whether the whole group is finite.
    pub fn is_finite_group(&self) -> bool {
        self.is_spherical(self.g.full_set())
    }

    /// All spherical subsets, including the empty set, in mask order.
    pub fn spherical_subsets(&self) -> Vec<VertexSet> {
        (0..self.spherical.len())
            .filter(|&m| self.spherical[m])
            .map(|m| VertexSet(m as u32))
            .collect()
    }

    /// Maximal spherical subsets, in mask order.
    pub fn maximal_spherical(&self) -> Vec<VertexSet> {
        let n = self.g.n();
        let subsets = self.spherical_subsets();
        subsets
            .iter()
            .copied()
            .filter(|&s| {
                (0..n).all(|v| s.contains(v) || !self.is_spherical(s.union(VertexSet::singleton(v))))
            })
            .filter(|&s| !s.is_empty() || n == 0)
            .collect()
    }

    /// Sorted irreducible factors of a spherical subset.
    pub fn finite_types_of(&self, set: VertexSet) -> Vec<FiniteType> {
        debug_assert!(self.is_spherical(set));
        let mut out: Vec<FiniteType> = self
            .subset_types(set)
            .iter()
            .map(|(_, t)| match t {
                IrreducibleType::Finite(f) => *f,
                _ => unreachable!("non-finite factor in spherical subset"),
            })
            .collect();
        out.sort();
        out
    }

    /// Conjugacy classes of maximal finite standard subgroups.
    pub fn cf_max(&self) -> CfMaxReport {
        let maxes = self.maximal_spherical();
        let classes: Vec<CfClass> = maxes
            .iter()
            .map(|&s| {
                let types = self.finite_types_of(s);
                CfClass {
                    vertices: s.iter().map(|v| self.g.name(v).to_string()).collect(),
                    order: product_order(&types),
                    pseudo_rank: product_pseudo_rank(&types),
                    types,
                }
            })
            .collect();
        let rank_bound = classes.iter().map(|c| c.pseudo_rank).sum();
        let mut pattern = vec![];
        for i in 0..maxes.len() {
            for j in i + 1..maxes.len() {
                let inter = maxes[i].intersection(maxes[j]);
                let mut pair = [classes[i].types.clone(), classes[j].types.clone()];
                pair.sort();
                let [lo, hi] = pair;
                pattern.push((lo, hi, self.finite_types_of(inter)));
            }
        }
        pattern.sort();
        CfMaxReport {
            classes,
            rank_bound,
            intersection_pattern: pattern,
        }
    }
}
