//! Exhaustive sweeps over labeled and unlabeled connected graphs.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::canon::canonical_mask;
use super::Graph;
use crate::error::{Error, Result};

/// Largest order for labeled sweeps (`2^21` edge masks at order 7).
pub const ENUM_MAX_ORDER: usize = 7;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// Graph whose edges are the set bits of `mask` in `pair_bit` order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let edges = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(k, _)| (mask >> k) & 1 == 1)
        .map(|(_, e)| e);
    Graph::new(n, edges).expect("mask edges are valid")
}

fn find(parent: &mut [u8], mut x: u8) -> u8 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

fn mask_connected(n: usize, mask: u64, pairs: &[(usize, usize)]) -> bool {
    if n <= 1 {
        return true;
    }
    let mut parent: Vec<u8> = (0..n as u8).collect();
    let mut comps = n;
    let mut m = mask;
    while m != 0 {
        let k = m.trailing_zeros() as usize;
        m &= m - 1;
        let (a, b) = pairs[k];
        let (ra, rb) = (find(&mut parent, a as u8), find(&mut parent, b as u8));
        if ra != rb {
            parent[ra as usize] = rb;
            comps -= 1;
            if comps == 1 {
                return true;
            }
        }
    }
    false
}

fn check_order(n: usize) -> Result<()> {
    if n > ENUM_MAX_ORDER {
        return Err(Error::CapExceeded {
            what: "graph enumeration",
            got: n,
            limit: ENUM_MAX_ORDER,
        });
    }
    Ok(())
}

/// Edge masks of all connected labeled graphs on `n` vertices, ascending.
pub fn connected_labeled_masks(n: usize) -> Result<Vec<u64>> {
    check_order(n)?;
    let pairs = pairs(n);
    let total = 1u64 << pairs.len();
    Ok((0..total)
        .into_par_iter()
        .filter(|&m| mask_connected(n, m, &pairs))
        .collect())
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, in canonical labeling, sorted by (size, canonical mask).
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    check_order(n)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let pairs = pairs(n);
    let total = 1u64 << pairs.len();
    let classes: BTreeSet<(u32, u64)> = (0..total)
        .into_par_iter()
        .filter(|&m| mask_connected(n, m, &pairs))
        .fold(BTreeSet::new, |mut acc, m| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| (m >> k) & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let c = canonical_mask(n, &edges);
            acc.insert((c.count_ones(), c));
            acc
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(classes
        .into_iter()
        .map(|(_, c)| graph_from_mask(n, c))
        .collect())
}
