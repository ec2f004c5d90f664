//! Unlabeled trees from Prüfer sequences, deduplicated by AHU encodings.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{prufer_decode, Graph};

/// Largest order for exhaustive tree enumeration (`9^7` Prüfer sequences).
pub const TREE_MAX_ORDER: usize = 9;

/// Centers of a tree: one vertex or two adjacent ones.
pub fn centers(t: &Graph) -> Vec<usize> {
    let n = t.order();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in t.neighbors(v) {
                if degree[w] > 1 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
            degree[v] = 0;
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn rooted_code(t: &Graph, v: usize, parent: usize) -> Vec<u8> {
    let mut kids: Vec<Vec<u8>> = t
        .neighbors(v)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(t, w, v))
        .collect();
    kids.sort_unstable();
    let mut out = vec![b'('];
    for k in kids {
        out.extend(k);
    }
    out.push(b')');
    out
}

/// Isomorphism-invariant encoding of a tree: the smallest AHU string over
/// its centers.
pub fn tree_code(t: &Graph) -> Vec<u8> {
    centers(t)
        .into_iter()
        .map(|c| rooted_code(t, c, usize::MAX))
        .min()
        .unwrap_or_default()
}

/// One labeled representative per unlabeled tree of order `n`, ordered by
/// encoding.
pub fn unlabeled_trees(n: usize) -> Result<Vec<Graph>> {
    if n > TREE_MAX_ORDER {
        return Err(Error::CapExceeded {
            what: "tree enumeration",
            got: n,
            limit: TREE_MAX_ORDER,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    if n <= 2 {
        return Ok(vec![Graph::new(n, (1..n).map(|v| (0, v)))?]);
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    let found: BTreeMap<Vec<u8>, Graph> = (0..total)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc, mut idx| {
            let mut seq = vec![0; len];
            for s in seq.iter_mut() {
                *s = idx % n;
                idx /= n;
            }
            let t = Graph::new(n, prufer_decode(&seq, n)).expect("Prüfer trees are simple");
            acc.entry(tree_code(&t)).or_insert(t);
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                a.entry(k).or_insert(v);
            }
            a
        });
    Ok(found.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_family;

    #[test]
    fn tree_counts() {
        // OEIS A000055.
        let want = [1, 1, 1, 2, 3, 6, 11, 23, 47];
        for n in 1..=9 {
            assert_eq!(unlabeled_trees(n).unwrap().len(), want[n - 1], "n={n}");
        }
        assert!(unlabeled_trees(10).is_err());
    }

    #[test]
    fn codes_are_invariant() {
        let p = make_family("path", &[6]).unwrap();
        let q = Graph::new(6, [(3, 1), (1, 5), (5, 0), (0, 2), (2, 4)]).unwrap();
        assert_eq!(tree_code(&p), tree_code(&q));
        assert_ne!(
            tree_code(&p),
            tree_code(&make_family("star", &[6]).unwrap())
        );
        assert_eq!(centers(&p), vec![2, 3]);
        assert_eq!(centers(&make_family("path", &[5]).unwrap()), vec![2]);
    }
}
