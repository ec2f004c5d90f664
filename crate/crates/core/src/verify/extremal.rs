//! Which connected graphs of a given order have the most distinct distance
//! Pareto eigenvalues.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    canonical_form, connected_graphs, connected_labeled_masks, graph_from_mask, Graph,
};
use crate::pareto::{self, SpectrumOptions};

pub const EXTREMAL_MAX_ORDER: usize = 7;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalResult {
    pub order: usize,
    pub max_count: usize,
    /// Graphs attaining `max_count`: one per isomorphism class in canonical
    /// labeling when deduplicating, otherwise every labeled graph.
    pub witnesses: Vec<Graph>,
    pub graphs_scanned: usize,
    /// Number of scanned graphs per Pareto count.
    pub histogram: BTreeMap<usize, usize>,
}

fn count(g: &Graph) -> Result<usize> {
    let dm = g.distance_matrix()?;
    let opts = SpectrumOptions {
        partitions: Some(1),
        ..SpectrumOptions::default()
    };
    Ok(pareto::spectrum_of_distance(&dm, &opts)?.len())
}

/// Scans every connected graph of order `n`. With `dedup_iso` the scan runs
/// over isomorphism classes; otherwise over all labeled graphs.
pub fn extremal_search(n: usize, dedup_iso: bool) -> Result<ExtremalResult> {
    if n > EXTREMAL_MAX_ORDER {
        return Err(Error::CapExceeded {
            what: "extremal search",
            got: n,
            limit: EXTREMAL_MAX_ORDER,
        });
    }
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "extremal search needs n >= 2, got {n}"
        )));
    }
    let graphs: Vec<Graph> = if dedup_iso {
        connected_graphs(n)?
    } else {
        connected_labeled_masks(n)?
            .into_iter()
            .map(|m| graph_from_mask(n, m))
            .collect()
    };
    let counts: Vec<usize> = graphs.par_iter().map(count).collect::<Result<_>>()?;
    let max_count = counts.iter().copied().max().unwrap_or(0);
    let mut histogram = BTreeMap::new();
    for &c in &counts {
        *histogram.entry(c).or_insert(0) += 1;
    }
    let mut witnesses: Vec<Graph> = graphs
        .iter()
        .zip(&counts)
        .filter(|&(_, &c)| c == max_count)
        .map(|(g, _)| g.clone())
        .collect();
    if dedup_iso {
        let mut seen = BTreeSet::new();
        witnesses.retain(|g| seen.insert(canonical_form(g).expect("order within cap")));
    }
    Ok(ExtremalResult {
        order: n,
        max_count,
        witnesses,
        graphs_scanned: graphs.len(),
        histogram,
    })
}
