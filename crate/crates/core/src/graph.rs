//! Labeled graphs describing Coxeter systems.
//!
//! Two conventions are in play and both are first-class here:
//!
//! * **Coxeter graph**: an edge `{v,w}` labeled `m >= 2` means the relation
//!   `(vw)^m`; a *missing* edge means `m = infinity` (no relation).
//! * **Dynkin diagram**: a missing edge means `m = 2` (the generators
//!   commute); edges carry labels `>= 3` or `infinity`.
//!
//! Internally a single symmetric matrix stores the Coxeter matrix entries,
//! with `0` encoding `infinity` and `1` on the diagonal; the two conventions
//! are views over the same data.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

/// Hard cap on vertex counts.  Subset-scanning invariants are exponential in
/// the vertex count, and the library targets desk-scale graphs.
pub const MAX_VERTICES: usize = 24;

/// Hard cap on finite edge labels.
pub const MAX_LABEL: u32 = 10_000;

/// A set of vertex indices as a bitmask (vertex counts are capped well below
/// the bit width).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(pub u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        VertexSet(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// All subsets of `self`, the empty set first, `self` last.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut sub: u32 = 0;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = VertexSet(sub);
            if sub == full {
                done = true;
            } else {
                // enumerate submasks in increasing order of the packed bits
                sub = (sub.wrapping_sub(full)) & full;
            }
            Some(out)
        })
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A Coxeter matrix entry.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Label {
    Finite(u32),
    Infinity,
}

impl Label {
    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinity => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinity => write!(f, "inf"),
        }
    }
}

/// A full symmetric Coxeter matrix: `1` on the diagonal, entries in
/// `{2,3,...} ∪ {∞}` off it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoxeterMatrix {
    pub names: Vec<String>,
    pub entries: Vec<Vec<Label>>,
}

/// A graph in the Coxeter-graph convention (missing edge = infinity).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    names: Vec<String>,
    /// Flat n*n symmetric matrix: 0 = infinity, 1 = diagonal, m >= 2 = label.
    m: Vec<u32>,
}

/// A graph in the Dynkin-diagram convention (missing edge = commutation).
#[derive(Clone, PartialEq, Eq)]
pub struct DynkinDiagram {
    names: Vec<String>,
    /// Same raw encoding as [`CoxeterGraph`]: 0 = infinity edge, 2 = missing
    /// edge, m >= 3 = labeled edge.
    m: Vec<u32>,
}

fn validate_names(names: &[String]) -> Result<()> {
    if names.len() > MAX_VERTICES {
        return Err(Error::Invalid(format!(
            "graph has {} vertices; at most {MAX_VERTICES} are supported",
            names.len()
        )));
    }
    let mut seen = HashMap::new();
    for (i, name) in names.iter().enumerate() {
        if name.is_empty() || name.chars().any(|c| c.is_whitespace()) {
            return Err(Error::Invalid(format!("bad vertex name {name:?}")));
        }
        if seen.insert(name.clone(), i).is_some() {
            return Err(Error::Invalid(format!("duplicate vertex `{name}`")));
        }
    }
    Ok(())
}

impl CoxeterGraph {
    /// Build a graph from vertex names and edges `(i, j, label)`.
    pub fn new(names: Vec<String>, edges: &[(usize, usize, u32)]) -> Result<Self> {
        validate_names(&names)?;
        let n = names.len();
        let mut m = vec![0u32; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        for &(a, b, label) in edges {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(Error::Invalid(format!(
                    "self-loop on vertex `{}`",
                    names[a]
                )));
            }
            if !(2..=MAX_LABEL).contains(&label) {
                return Err(Error::Invalid(format!(
                    "edge label {label} out of range (want 2..={MAX_LABEL})"
                )));
            }
            if m[a * n + b] != 0 {
                return Err(Error::Invalid(format!(
                    "duplicate edge {{{}, {}}}",
                    names[a], names[b]
                )));
            }
            m[a * n + b] = label;
            m[b * n + a] = label;
        }
        Ok(CoxeterGraph { names, m })
    }

    /// Convenience constructor with numbered vertex names `v0, v1, ...`.
    pub fn numbered(n: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        CoxeterGraph::new((0..n).map(|i| format!("v{i}")).collect(), edges)
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    /// Raw matrix entry: 0 = infinity, 1 = diagonal, otherwise the label.
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.m[i * self.n() + j]
    }

    /// The Coxeter matrix entry `m(i,j)` for `i != j`; `None` means infinity.
    pub fn label(&self, i: usize, j: usize) -> Option<u32> {
        match self.entry(i, j) {
            0 => None,
            m => Some(m),
        }
    }

    /// Edges of the Coxeter graph (pairs with a finite label), `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let n = self.n();
        let mut out = vec![];
        for i in 0..n {
            for j in i + 1..n {
                let e = self.entry(i, j);
                if e != 0 {
                    out.push((i, j, e));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Multiset of finite edge labels, sorted.
    pub fn edge_labels(&self) -> Vec<u32> {
        let mut ls: Vec<u32> = self.edges().iter().map(|&(_, _, m)| m).collect();
        ls.sort_unstable();
        ls
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn to_coxeter_matrix(&self) -> CoxeterMatrix {
        let n = self.n();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match self.entry(i, j) {
                        0 => Label::Infinity,
                        m => Label::Finite(m),
                    })
                    .collect()
            })
            .collect();
        CoxeterMatrix {
            names: self.names.clone(),
            entries,
        }
    }

    pub fn from_coxeter_matrix(mat: &CoxeterMatrix) -> Result<Self> {
        let n = mat.names.len();
        if mat.entries.len() != n || mat.entries.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("matrix shape mismatch".into()));
        }
        let mut edges = vec![];
        for i in 0..n {
            if mat.entries[i][i] != Label::Finite(1) {
                return Err(Error::Invalid("diagonal entries must be 1".into()));
            }
            for j in i + 1..n {
                if mat.entries[i][j] != mat.entries[j][i] {
                    return Err(Error::Invalid("matrix must be symmetric".into()));
                }
                if let Label::Finite(m) = mat.entries[i][j] {
                    edges.push((i, j, m));
                }
            }
        }
        CoxeterGraph::new(mat.names.clone(), &edges)
    }

    /// The same Coxeter system viewed as a Dynkin diagram.
    pub fn to_dynkin(&self) -> DynkinDiagram {
        DynkinDiagram {
            names: self.names.clone(),
            m: self.m.clone(),
        }
    }

    /// Induced subgraph on a vertex subset; vertex order is preserved.
    pub fn induced_subgraph(&self, set: VertexSet) -> CoxeterGraph {
        let verts: Vec<usize> = set.iter().collect();
        let names = verts.iter().map(|&v| self.names[v].clone()).collect();
        let k = verts.len();
        let mut m = vec![0u32; k * k];
        for a in 0..k {
            for b in 0..k {
                m[a * k + b] = self.entry(verts[a], verts[b]);
            }
        }
        CoxeterGraph { names, m }
    }

    /// Induced subgraph selected by vertex names.
    pub fn induced_by_names(&self, names: &[&str]) -> Result<CoxeterGraph> {
        let mut set = VertexSet::EMPTY;
        for name in names {
            let v = self
                .index_of(name)
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))?;
            set.insert(v);
        }
        Ok(self.induced_subgraph(set))
    }

    /// Neighbors of `v` in the Coxeter graph (finite label).
    pub fn link(&self, v: usize) -> VertexSet {
        let mut set = VertexSet::EMPTY;
        for w in 0..self.n() {
            if w != v && self.entry(v, w) != 0 {
                set.insert(w);
            }
        }
        set
    }

    /// `link(v) ∪ {v}`.
    pub fn star(&self, v: usize) -> VertexSet {
        let mut set = self.link(v);
        set.insert(v);
        set
    }

    /// Connected components under Coxeter-graph adjacency, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_by(|i, j| self.entry(i, j) != 0)
    }

    /// Connected components of the induced subgraph on `within` under
    /// Coxeter-graph adjacency (finite label).
    pub fn coxeter_components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let comps = self.components_by(|i, j| {
            within.contains(i) && within.contains(j) && self.entry(i, j) != 0
        });
        comps
            .into_iter()
            .filter(|c| c.is_subset_of(within))
            .collect()
    }

    /// Connected components of the induced subgraph on `within` under
    /// Dynkin-diagram adjacency (`m != 2`, including missing Coxeter edges).
    pub fn dynkin_components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut comps = self.components_by(|i, j| {
            within.contains(i) && within.contains(j) && self.entry(i, j) != 2
        });
        comps.retain(|c| c.intersection(within) == *c && !c.is_empty());
        comps
            .into_iter()
            .filter(|c| within.contains(c.iter().next().unwrap()))
            .collect()
    }

    fn components_by(&self, adj: impl Fn(usize, usize) -> bool) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = VertexSet::EMPTY;
        let mut out = vec![];
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::singleton(start);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in 0..n {
                    if !comp.contains(w) && adj(v, w) {
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Parse the line-oriented text format:
    ///
    /// ```text
    /// # comment
    /// vertex a
    /// a b 3
    /// ```
    ///
    /// Vertices referenced only in edge lines are declared implicitly, in
    /// order of first appearance.
    pub fn parse(text: &str) -> Result<CoxeterGraph> {
        let mut names: Vec<String> = vec![];
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut edges: Vec<(usize, usize, u32, usize)> = vec![];
        fn intern(
            name: &str,
            names: &mut Vec<String>,
            index: &mut HashMap<String, usize>,
        ) -> usize {
            *index.entry(name.to_string()).or_insert_with(|| {
                names.push(name.to_string());
                names.len() - 1
            })
        }
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                ["vertex", name] => {
                    if index.contains_key(*name) {
                        return Err(Error::parse(lineno, format!("duplicate vertex `{name}`")));
                    }
                    intern(name, &mut names, &mut index);
                }
                [a, b, label] => {
                    let m: u32 = label.parse().map_err(|_| {
                        Error::parse(lineno, format!("bad edge label `{label}`"))
                    })?;
                    if !(2..=MAX_LABEL).contains(&m) {
                        return Err(Error::parse(
                            lineno,
                            format!("edge label {m} out of range (want 2..={MAX_LABEL})"),
                        ));
                    }
                    let ia = intern(a, &mut names, &mut index);
                    let ib = intern(b, &mut names, &mut index);
                    if ia == ib {
                        return Err(Error::parse(lineno, format!("self-loop on `{a}`")));
                    }
                    if edges
                        .iter()
                        .any(|&(x, y, _, _)| (x, y) == (ia, ib) || (x, y) == (ib, ia))
                    {
                        return Err(Error::parse(
                            lineno,
                            format!("duplicate edge {{{a}, {b}}}"),
                        ));
                    }
                    edges.push((ia, ib, m, lineno));
                }
                _ => {
                    return Err(Error::parse(
                        lineno,
                        format!("cannot parse line `{line}` (want `vertex NAME` or `A B LABEL`)"),
                    ))
                }
            }
        }
        let plain: Vec<(usize, usize, u32)> =
            edges.iter().map(|&(a, b, m, _)| (a, b, m)).collect();
        CoxeterGraph::new(names, &plain)
    }

    /// Render in the text format accepted by [`CoxeterGraph::parse`];
    /// `parse(render(g))` reproduces `g` exactly, including vertex order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            out.push_str(&format!("vertex {name}\n"));
        }
        for (i, j, m) in self.edges() {
            out.push_str(&format!("{} {} {}\n", self.names[i], self.names[j], m));
        }
        out
    }

    /// Parse the JSON form `{"vertices": [...], "edges": [["a","b",3], ...]}`.
    /// Unlike the text format, edge endpoints must be declared in `vertices`.
    pub fn from_json(text: &str) -> Result<CoxeterGraph> {
        #[derive(Deserialize)]
        struct Doc {
            vertices: Vec<String>,
            #[serde(default)]
            edges: Vec<(String, String, u32)>,
        }
        let doc: Doc = serde_json::from_str(text)?;
        let index: HashMap<&str, usize> = doc
            .vertices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let mut edges = vec![];
        for (a, b, m) in &doc.edges {
            let ia = *index
                .get(a.as_str())
                .ok_or_else(|| Error::UnknownVertex(a.clone()))?;
            let ib = *index
                .get(b.as_str())
                .ok_or_else(|| Error::UnknownVertex(b.clone()))?;
            edges.push((ia, ib, *m));
        }
        CoxeterGraph::new(doc.vertices, &edges)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.names,
            "edges": self
                .edges()
                .iter()
                .map(|&(i, j, m)| serde_json::json!([self.names[i], self.names[j], m]))
                .collect::<Vec<_>>(),
        })
    }

    /// Graphviz rendering of the Coxeter graph.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph coxeter {\n");
        for name in &self.names {
            out.push_str(&format!("  \"{name}\";\n"));
        }
        for (i, j, m) in self.edges() {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\" [label=\"{}\"];\n",
                self.names[i], self.names[j], m
            ));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Debug for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterGraph({} vertices; ", self.n())?;
        let mut first = true;
        for (i, j, m) in self.edges() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{}-{}:{}", self.names[i], self.names[j], m)?;
        }
        write!(f, ")")
    }
}

impl DynkinDiagram {
    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Edge label in the Dynkin convention; `None` means *no edge*
    /// (commuting generators), `Some(Label::Infinity)` an infinity edge.
    pub fn edge(&self, i: usize, j: usize) -> Option<Label> {
        match self.m[i * self.n() + j] {
            2 => None,
            0 => Some(Label::Infinity),
            m => Some(Label::Finite(m)),
        }
    }

    pub fn edges(&self) -> Vec<(usize, usize, Label)> {
        let n = self.n();
        let mut out = vec![];
        for i in 0..n {
            for j in i + 1..n {
                if let Some(l) = self.edge(i, j) {
                    out.push((i, j, l));
                }
            }
        }
        out
    }

    /// The same Coxeter system viewed as a Coxeter graph.  Converting back
    /// and forth is the identity on the underlying Coxeter matrix.
    pub fn to_coxeter(&self) -> CoxeterGraph {
        CoxeterGraph {
            names: self.names.clone(),
            m: self.m.clone(),
        }
    }

    /// Build a Dynkin diagram from explicit edges; omitted pairs commute.
    /// `Label::Finite` labels must be at least 3.
    pub fn new(names: Vec<String>, edges: &[(usize, usize, Label)]) -> Result<Self> {
        validate_names(&names)?;
        let n = names.len();
        let mut m = vec![2u32; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        for &(a, b, label) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::Invalid(format!("bad edge ({a},{b})")));
            }
            let raw = match label {
                Label::Infinity => 0,
                Label::Finite(v) if (3..=MAX_LABEL).contains(&v) => v,
                Label::Finite(v) => {
                    return Err(Error::Invalid(format!(
                        "Dynkin edge label {v} out of range (want 3..={MAX_LABEL} or infinity)"
                    )))
                }
            };
            if m[a * n + b] != 2 {
                return Err(Error::Invalid(format!("duplicate edge ({a},{b})")));
            }
            m[a * n + b] = raw;
            m[b * n + a] = raw;
        }
        Ok(DynkinDiagram { names, m })
    }

    pub fn numbered(n: usize, edges: &[(usize, usize, Label)]) -> Result<Self> {
        DynkinDiagram::new((0..n).map(|i| format!("v{i}")).collect(), edges)
    }
}

impl fmt::Debug for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DynkinDiagram({} vertices; ", self.n())?;
        let mut first = true;
        for (i, j, l) in self.edges() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{}-{}:{}", self.names[i], self.names[j], l)?;
        }
        write!(f, ")")
    }
}
