//! Nerve complexes and their integral cohomology, and the virtual
//! cohomological dimension computed from them.
//!
//! The nerve of a Coxeter system has the generators as vertices and a
//! `(k-1)`-simplex for every spherical subset of size `k`.  The virtual
//! cohomological dimension of the group is the maximum, over spherical
//! subsets `T`, of `1 +` the top degree with nonzero reduced cohomology of
//! the nerve of the system generated by the remaining vertices; the empty
//! complex carries its reduced cohomology in degree `-1` and so contributes
//! `0` (finite groups).

use crate::analysis::Analyzer;
use crate::graph::VertexSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// A finite abstract simplicial complex on bitmask vertex sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    /// `faces[k]` lists the `k`-dimensional faces (sets of size `k + 1`),
    /// sorted by mask.  The implicit empty face is not stored.
    pub faces: Vec<Vec<VertexSet>>,
}

impl SimplicialComplex {
    /// Build the complex whose faces are the given nonempty sets (closed
    /// under subsets by assumption of the caller).
    pub fn from_faces(mut sets: Vec<VertexSet>) -> Self {
        sets.retain(|s| !s.is_empty());
        let top = sets.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut faces = vec![vec![]; top];
        for s in sets {
            faces[s.len() - 1].push(s);
        }
        for level in &mut faces {
            level.sort();
            level.dedup();
        }
        SimplicialComplex { faces }
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Top face dimension, or -1 for the empty complex.
    pub fn dim(&self) -> i32 {
        self.faces.len() as i32 - 1
    }

    pub fn face_count(&self, dim: usize) -> usize {
        self.faces.get(dim).map_or(0, |v| v.len())
    }

    /// Boundary matrix from `k`-faces to `(k-1)`-faces of the augmented
    /// complex; `k = 0` gives the augmentation row onto the empty face.
    fn boundary(&self, k: usize) -> Vec<Vec<BigInt>> {
        let cols = self.face_count(k);
        if k == 0 {
            return vec![vec![BigInt::from(1); cols]];
        }
        let rows_faces = &self.faces[k - 1];
        let row_index = |s: VertexSet| rows_faces.binary_search(&s).unwrap();
        let mut m = vec![vec![BigInt::zero(); cols]; rows_faces.len()];
        for (c, &face) in self.faces[k].iter().enumerate() {
            for (i, v) in face.iter().enumerate() {
                let mut sub = face;
                sub.remove(v);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m[row_index(sub)][c] = BigInt::from(sign);
            }
        }
        m
    }
}

/// One reduced cohomology group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyGroup {
    pub degree: i32,
    pub free_rank: usize,
    /// Orders of the finite cyclic summands, each dividing the next.
    pub torsion: Vec<u128>,
}

/// Reduced integral cohomology of a complex, degree by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyProfile {
    pub groups: Vec<CohomologyGroup>,
}

impl CohomologyProfile {
    /// Largest degree with a nonzero group, or `None` if all vanish.
    pub fn top_nonzero_degree(&self) -> Option<i32> {
        self.groups
            .iter()
            .rev()
            .find(|g| g.free_rank > 0 || !g.torsion.is_empty())
            .map(|g| g.degree)
    }
}

/// Invariant factors (each dividing the next, all positive) of an integer
/// matrix, via the Smith normal form.
pub fn smith_invariant_factors(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut factors = vec![];
    let mut r = 0;
    let mut c = 0;
    while r < rows && c < cols {
        // pick the nonzero pivot of smallest absolute value in the block
        let mut pivot: Option<(usize, usize)> = None;
        for i in r..rows {
            for j in c..cols {
                if !m[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(r, pi);
        for row in m.iter_mut() {
            row.swap(c, pj);
        }
        // eliminate; restart if a reduction produced a smaller remainder
        let mut clean = true;
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let q = &m[i][c] / &m[r][c];
            for j in c..cols {
                let sub = &q * &m[r][j];
                m[i][j] -= sub;
            }
            if !m[i][c].is_zero() {
                clean = false;
            }
        }
        for j in c + 1..cols {
            if m[r][j].is_zero() {
                continue;
            }
            let q = &m[r][j] / &m[r][c];
            for i in r..rows {
                let sub = &q * &m[i][c];
                m[i][j] -= sub;
            }
            if !m[r][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        factors.push(m[r][c].abs());
        r += 1;
        c += 1;
    }
    // enforce the divisibility chain
    let mut i = 0;
    while i + 1 < factors.len() {
        let a = factors[i].clone();
        let b = factors[i + 1].clone();
        if (&b % &a).is_zero() {
            i += 1;
            continue;
        }
        let g = gcd(a.clone(), b.clone());
        let l = &a * &b / &g;
        factors[i] = g;
        factors[i + 1] = l;
        i = i.saturating_sub(1);
    }
    factors
}

fn gcd(a: BigInt, b: BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Reduced integral cohomology of the complex, degrees `-1 ..= dim`.
pub fn reduced_cohomology(complex: &SimplicialComplex) -> CohomologyProfile {
    let top = complex.dim();
    // invariant factors of each boundary map of the augmented complex
    let mut inv: Vec<Vec<BigInt>> = vec![];
    for k in 0..=(top.max(-1) + 1) as usize {
        if k as i32 > top {
            break;
        }
        inv.push(smith_invariant_factors(complex.boundary(k)));
    }
    let rank = |k: i32| -> usize {
        if k < 0 || k as usize >= inv.len() {
            0
        } else {
            inv[k as usize].len()
        }
    };
    let count = |k: i32| -> usize {
        if k == -1 {
            1
        } else if k < -1 {
            0
        } else {
            complex.face_count(k as usize)
        }
    };
    let mut groups = vec![];
    for n in -1..=top {
        let free = count(n) - rank(n + 1) - rank(n);
        let torsion: Vec<u128> = if n >= 0 {
            inv[n as usize]
                .iter()
                .filter(|f| **f > BigInt::from(1))
                .map(|f| {
                    u128::try_from(f).unwrap_or_else(|_| panic!("torsion factor too large: {f}"))
                })
                .collect()
        } else {
            vec![]
        };
        groups.push(CohomologyGroup {
            degree: n,
            free_rank: free,
            torsion,
        });
    }
    if top < 0 {
        // empty complex: only the empty face, reduced cohomology Z in
        // degree -1
        groups = vec![CohomologyGroup {
            degree: -1,
            free_rank: 1,
            torsion: vec![],
        }];
    }
    CohomologyProfile { groups }
}

/// Nerve of the Coxeter system restricted to `within`: one `(k-1)`-simplex
/// per nonempty spherical subset of size `k` contained in `within`.
pub fn nerve_within(a: &Analyzer, within: VertexSet) -> SimplicialComplex {
    let faces = a
        .spherical_subsets()
        .into_iter()
        .filter(|s| !s.is_empty() && s.is_subset_of(within))
        .collect();
    SimplicialComplex::from_faces(faces)
}

/// Nerve of the whole system.
pub fn nerve(a: &Analyzer) -> SimplicialComplex {
    nerve_within(a, a.g.full_set())
}

/// Virtual cohomological dimension over the integers.
pub fn vcd(a: &Analyzer) -> usize {
    let mut best = 0usize;
    for t in a.spherical_subsets() {
        let rest = a.g.full_set().difference(t);
        let profile = reduced_cohomology(&nerve_within(a, rest));
        if let Some(d) = profile.top_nonzero_degree() {
            // reduced degree d contributes d + 1 (the empty complex has
            // d = -1 and contributes 0)
            best = best.max((d + 1) as usize);
        }
    }
    best
}
