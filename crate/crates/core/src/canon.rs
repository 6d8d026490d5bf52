//! Canonical forms and isomorphism of labeled graphs.
//!
//! Two Coxeter graphs are isomorphic exactly when their canonical forms are
//! byte-equal.  The canonical form fixes a vertex order minimizing the
//! concatenation of upper-triangle matrix columns (the entries `(i,j)` with
//! `i < j`, grouped by `j`); under that grouping the minimal encoding can be
//! found by a breadth-first search that keeps, level by level, exactly the
//! partial placements realizing the minimal next column.  Missing edges
//! encode as `0` and therefore sort before every finite label.

use crate::graph::CoxeterGraph;
use std::collections::HashSet;

/// Minimal encoding and a vertex order realizing it: `order[k]` is the
/// original index of the vertex placed at position `k`.
fn min_encoding(g: &CoxeterGraph) -> (Vec<u32>, Vec<usize>) {
    let n = g.n();
    if n == 0 {
        return (vec![], vec![]);
    }
    let mut encoding: Vec<u32> = Vec::with_capacity(n * (n - 1) / 2);
    // all single-vertex placements tie (their column is empty)
    let mut frontier: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    dedup_frontier(g, &mut frontier);
    for k in 1..n {
        let mut best_col: Option<Vec<u32>> = None;
        let mut next: Vec<Vec<usize>> = vec![];
        for placed in &frontier {
            for v in 0..n {
                if placed.contains(&v) {
                    continue;
                }
                let col: Vec<u32> = (0..k).map(|i| g.entry(placed[i], v)).collect();
                let keep = match &best_col {
                    None => true,
                    Some(b) => match col.cmp(b) {
                        std::cmp::Ordering::Less => {
                            next.clear();
                            true
                        }
                        std::cmp::Ordering::Equal => true,
                        std::cmp::Ordering::Greater => false,
                    },
                };
                if keep {
                    if best_col.as_ref() != Some(&col) {
                        best_col = Some(col.clone());
                    }
                    let mut ext = placed.clone();
                    ext.push(v);
                    next.push(ext);
                }
            }
        }
        encoding.extend(best_col.unwrap());
        frontier = next;
        dedup_frontier(g, &mut frontier);
    }
    let order = frontier.into_iter().next().unwrap();
    (encoding, order)
}

/// Drop placements that are interchangeable for every future column: two
/// placements with the same vertex set whose placed sequences see every
/// remaining vertex identically lead to identical continuations.
fn dedup_frontier(g: &CoxeterGraph, frontier: &mut Vec<Vec<usize>>) {
    let n = g.n();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    frontier.retain(|placed| {
        let mut sig: Vec<u32> = Vec::with_capacity(1 + placed.len() * n);
        let mut used: u32 = 0;
        for &p in placed {
            used |= 1 << p;
        }
        sig.push(used);
        for w in 0..n {
            if used >> w & 1 == 0 {
                for &p in placed {
                    sig.push(g.entry(p, w));
                }
            }
        }
        seen.insert(sig)
    });
}

/// Canonical byte string for a Coxeter graph.  Equal bytes iff isomorphic.
pub fn canonical_form(g: &CoxeterGraph) -> Vec<u8> {
    let (enc, _) = min_encoding(g);
    let mut out = Vec::with_capacity(1 + enc.len() * 2);
    out.push(g.n() as u8);
    for e in enc {
        debug_assert!(e <= u16::MAX as u32);
        out.extend_from_slice(&(e as u16).to_le_bytes());
    }
    out
}

/// Rebuild a graph (with numbered vertex names) from canonical bytes.
pub fn graph_from_canonical(bytes: &[u8]) -> Option<CoxeterGraph> {
    let n = *bytes.first()? as usize;
    if bytes.len() != 1 + n * (n - 1) / 2 * 2 {
        return None;
    }
    let mut vals = bytes[1..]
        .chunks_exact(2)
        .map(|c| u16::from_le_bytes([c[0], c[1]]) as u32);
    let mut edges = vec![];
    for j in 0..n {
        for i in 0..j {
            let m = vals.next()?;
            if m != 0 {
                edges.push((i, j, m));
            }
        }
    }
    CoxeterGraph::numbered(n, &edges).ok()
}

/// Label-preserving vertex bijection from `a` to `b`, if one exists.
/// Deterministic: derived from the canonical orders of both graphs.
pub fn are_isomorphic(a: &CoxeterGraph, b: &CoxeterGraph) -> Option<Vec<usize>> {
    if a.n() != b.n() {
        return None;
    }
    let (enc_a, order_a) = min_encoding(a);
    let (enc_b, order_b) = min_encoding(b);
    if enc_a != enc_b {
        return None;
    }
    // vertex order_a[k] of `a` corresponds to vertex order_b[k] of `b`
    let mut map = vec![0usize; a.n()];
    for k in 0..a.n() {
        map[order_a[k]] = order_b[k];
    }
    Some(map)
}
