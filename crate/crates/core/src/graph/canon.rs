//! Brute-force canonical forms for small graphs.
//!
//! Vertices are first split into classes by color refinement (an
//! isomorphism-invariant partition); the canonical form is then the minimum
//! upper-triangle adjacency mask over all relabelings that keep the classes
//! in refinement order. Only permutations inside classes are enumerated, so
//! the cost is the product of the class-size factorials.

use super::Graph;
use crate::error::{Error, Result};

/// Largest order whose upper triangle fits in a `u64` mask.
pub const CANON_MAX_ORDER: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub order: u8,
    /// Bit `j(j-1)/2 + i` is set iff `{i, j}` (with `i < j`) is an edge
    /// in the canonical labeling.
    pub mask: u64,
}

impl CanonicalForm {
    pub fn to_graph(self) -> Graph {
        super::graph_from_mask(self.order as usize, self.mask)
    }
}

#[inline]
pub(crate) fn pair_bit(i: usize, j: usize) -> u32 {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    (j * (j - 1) / 2 + i) as u32
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    if g.order() > CANON_MAX_ORDER {
        return Err(Error::CapExceeded {
            what: "canonical form",
            got: g.order(),
            limit: CANON_MAX_ORDER,
        });
    }
    Ok(CanonicalForm {
        order: g.order() as u8,
        mask: canonical_mask(g.order(), g.edges()),
    })
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.order() != b.order() || a.size() != b.size() {
        return false;
    }
    match (canonical_form(a), canonical_form(b)) {
        (Ok(x), Ok(y)) => x == y,
        _ => panic!("is_isomorphic is limited to order {CANON_MAX_ORDER}"),
    }
}

pub(crate) fn canonical_mask(n: usize, edges: &[(usize, usize)]) -> u64 {
    if n <= 1 {
        return 0;
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let colors = refine(&adj);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (colors[v], v));
    // Class boundaries in `order`.
    let mut bounds = vec![0];
    for p in 1..n {
        if colors[order[p]] != colors[order[p - 1]] {
            bounds.push(p);
        }
    }
    bounds.push(n);

    let mut pos = vec![0usize; n];
    let mut best = u64::MAX;
    search(&mut order, &bounds, 0, 0, edges, &mut pos, &mut best);
    best
}

/// 1-dimensional Weisfeiler-Leman refinement with canonically numbered
/// colors (colors are ranks of sorted signatures).
fn refine(adj: &[Vec<usize>]) -> Vec<u32> {
    let n = adj.len();
    let mut colors: Vec<u32> = adj.iter().map(|a| a.len() as u32).collect();
    let mut classes = count_distinct(&colors);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = adj[v].iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        colors = sigs
            .iter()
            .map(|s| uniq.binary_search(s).unwrap() as u32)
            .collect();
        let next = uniq.len();
        if next == classes {
            return colors;
        }
        classes = next;
    }
}

fn count_distinct(xs: &[u32]) -> usize {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Enumerates permutations within each class, class by class.
fn search(
    order: &mut [usize],
    bounds: &[usize],
    class: usize,
    start: usize,
    edges: &[(usize, usize)],
    pos: &mut [usize],
    best: &mut u64,
) {
    if class + 1 == bounds.len() {
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let mask = edges
            .iter()
            .fold(0u64, |m, &(u, v)| m | (1u64 << pair_bit(pos[u], pos[v])));
        *best = (*best).min(mask);
        return;
    }
    let end = bounds[class + 1];
    if start == end {
        search(order, bounds, class + 1, end, edges, pos, best);
        return;
    }
    for k in start..end {
        order.swap(start, k);
        search(order, bounds, class, start + 1, edges, pos, best);
        order.swap(start, k);
    }
}
