//! Invariants, classification and profinite-genus search for Coxeter groups
//! presented by labeled graphs.
//!
//! The defining data is a *Coxeter graph*: vertices are generators, an edge
//! labeled `m >= 2` imposes `(vw)^m = 1`, and a missing edge imposes no
//! relation.  From that combinatorial datum the library computes
//! classification data (finite/affine/indefinite pieces), group invariants
//! (Euler characteristic, ends, virtual cohomological dimension, Schur
//! multiplier, ...), decides membership in families whose graphs are known
//! to be recoverable from the profinite completion, and runs small-scale
//! searches for other graphs whose groups share all computed invariants.

pub mod analysis;
pub mod cache;
pub mod canon;
pub mod classify;
pub mod enumeration;
pub mod error;
pub mod gram;
pub mod invariants;
pub mod graph;
pub mod rigidity;
pub mod tables;
pub mod topology;

pub use analysis::{Analyzer, CfClass, CfMaxReport};
pub use cache::{InvariantCache, CACHE_ENV};
pub use canon::{are_isomorphic, canonical_form, graph_from_canonical};
pub use enumeration::{
    enumerate_graphs, genus_search, EnumerationConfig, GenusReport, GenusVerdict,
};
pub use invariants::{
    compare, invariant_vector, profinitely_consistent, CompareReport, InvariantVector,
};
pub use rigidity::{
    default_label_cutoff, family_membership, genus_bounds, known_iso_normalize, FamilyVerdict,
    GenusBounds, Verdict,
};
pub use topology::{nerve, reduced_cohomology, vcd, CohomologyProfile};
pub use classify::{
    affine_template, classify_component, finite_template, normalize_dihedral, AffineType,
    FiniteType, IrreducibleType,
};
pub use error::{Error, Result};
pub use gram::{classify_via_gram, gram_matrix, GramVerdict, DEFAULT_TOLERANCE};
pub use graph::{CoxeterGraph, CoxeterMatrix, DynkinDiagram, Label, VertexSet};
