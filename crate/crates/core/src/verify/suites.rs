//! Batch runs of the checkers, as exposed by `distpareto verify`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{
    check_coalescence_quasiconvexity, check_edge_monotonicity, check_eigenvector_convexity,
    check_tree_extremes, describe, extremal_search, is_family, unlabeled_trees, Counterexample,
    PropertyReport, Status,
};
use crate::error::{Error, Result};
use crate::graph::{connected_graphs, Graph};
use crate::laws::{BoundContext, BoundId, BoundResult};
use crate::pareto;

/// Failures listed in full; the rest are only counted.
pub const MAX_LISTED: usize = 50;
/// Orders of the random graphs added to the bound sweep.
pub const RANDOM_ORDERS: std::ops::RangeInclusive<usize> = 7..=10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Convexity,
    Monotonicity,
    Quasiconvex,
    TreeExtremes,
    BoundsSweep,
    Extremal,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Convexity,
        Suite::Monotonicity,
        Suite::Quasiconvex,
        Suite::TreeExtremes,
        Suite::BoundsSweep,
        Suite::Extremal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Convexity => "convexity",
            Suite::Monotonicity => "monotonicity",
            Suite::Quasiconvex => "quasiconvex",
            Suite::TreeExtremes => "tree-extremes",
            Suite::BoundsSweep => "bounds-sweep",
            Suite::Extremal => "extremal",
        }
    }

    /// Default `--order` per suite.
    pub fn default_order(self) -> usize {
        match self {
            Suite::Convexity => 7,
            Suite::Monotonicity | Suite::BoundsSweep | Suite::Quasiconvex => 6,
            Suite::TreeExtremes => 8,
            Suite::Extremal => 5,
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub order: usize,
    pub checked: usize,
    pub violations: usize,
    pub inconclusive: usize,
    /// First [`MAX_LISTED`] reports that did not hold cleanly.
    pub failures: Vec<PropertyReport>,
    pub data: BTreeMap<&'static str, Value>,
}

impl SuiteReport {
    fn new(suite: Suite, order: usize) -> Self {
        SuiteReport {
            suite: suite.as_str(),
            order,
            checked: 0,
            violations: 0,
            inconclusive: 0,
            failures: Vec::new(),
            data: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    fn absorb(&mut self, reports: impl IntoIterator<Item = PropertyReport>) {
        for r in reports {
            self.checked += 1;
            match r.status {
                Status::Holds => continue,
                Status::Inconclusive => self.inconclusive += 1,
                Status::Violated | Status::HypothesisFailed => self.violations += 1,
            }
            if self.failures.len() < MAX_LISTED {
                self.failures.push(r);
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteParams {
    pub order: Option<usize>,
    /// Extra random graphs for the bound sweep.
    pub random: usize,
    pub seed: u64,
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<SuiteReport> {
    let order = params.order.unwrap_or(suite.default_order());
    match suite {
        Suite::Convexity => convexity(order),
        Suite::Monotonicity => monotonicity(order),
        Suite::Quasiconvex => quasiconvex(order),
        Suite::TreeExtremes => tree_extremes(order),
        Suite::BoundsSweep => bounds_sweep(order, params.random, params.seed),
        Suite::Extremal => extremal(order),
    }
}

/// Every Pareto eigenpair of every tree up to `order`.
pub fn convexity(order: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Convexity, order);
    let mut trees = 0;
    for n in 2..=order {
        for t in unlabeled_trees(n)? {
            trees += 1;
            let dm = t.distance_matrix()?;
            let found: Vec<PropertyReport> = (1u32..1 << n)
                .into_par_iter()
                .map(|mask| {
                    let support: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                    let pair = pareto::pareto_eigenpair_in(&dm, &support)?;
                    check_eigenvector_convexity(&t, &pair)
                })
                .collect::<Result<_>>()?;
            report.absorb(found);
        }
    }
    report.data.insert("trees", json!(trees));
    Ok(report)
}

/// Every edge deletion that keeps a connected graph of order up to `order`
/// connected, one graph per isomorphism class.
pub fn monotonicity(order: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Monotonicity, order);
    let mut strict = 0;
    let mut equal = 0;
    for n in 2..=order {
        let graphs = connected_graphs(n)?;
        let found: Vec<PropertyReport> = graphs
            .par_iter()
            .flat_map_iter(|g| {
                g.edges()
                    .iter()
                    .filter(|&&(u, v)| g.delete_edge(u, v).is_ok_and(|h| h.is_connected()))
                    .map(|&e| check_edge_monotonicity(g, e))
                    .collect::<Vec<_>>()
            })
            .collect::<Result<_>>()?;
        for r in &found {
            if r.data["strict"] == json!(true) {
                strict += 1;
            } else {
                equal += 1;
            }
        }
        report.absorb(found);
    }
    report.data.insert("strict", json!(strict));
    report.data.insert("equal", json!(equal));
    Ok(report)
}

/// Coalescences of every tree of order 3..=`order` with every connected
/// graph of order 2..=4 at every vertex.
pub fn quasiconvex(order: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Quasiconvex, order);
    let mut attachments = Vec::new();
    for m in 2..=4 {
        for h in connected_graphs(m)? {
            for w in 0..m {
                attachments.push((h.clone(), w));
            }
        }
    }
    for n in 3..=order {
        for t in unlabeled_trees(n)? {
            let found: Vec<PropertyReport> = attachments
                .par_iter()
                .map(|(h, w)| check_coalescence_quasiconvexity(&t, h, *w))
                .collect::<Result<_>>()?;
            report.absorb(found);
        }
    }
    Ok(report)
}

pub fn tree_extremes(order: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::TreeExtremes, order);
    let found: Vec<PropertyReport> = (3..=order)
        .map(check_tree_extremes)
        .collect::<Result<_>>()?;
    let per_order: Vec<Value> = found
        .iter()
        .map(|r| json!({"trees": r.data["trees"], "path_rho2": r.data["path_rho2"], "star_rho2": r.data["star_rho2"]}))
        .collect();
    report.data.insert("per_order", json!(per_order));
    report.absorb(found);
    Ok(report)
}

pub fn extremal(order: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Extremal, order);
    let result = extremal_search(order, true)?;
    report.checked = result.graphs_scanned;
    report.data.insert("max_count", json!(result.max_count));
    report
        .data
        .insert("witness_count", json!(result.witnesses.len()));
    report.data.insert(
        "witnesses",
        serde_json::to_value(&result.witnesses).expect("serializable"),
    );
    report.data.insert("histogram", json!(result.histogram));
    Ok(report)
}

/// Graph shape that attains a bound with equality, per order.
fn equality_family(id: BoundId, n: usize) -> Option<(&'static str, Vec<usize>)> {
    match id {
        BoundId::Rho2DominatingUpper | BoundId::Rho2Diam2Upper => Some(("star", vec![n])),
        BoundId::Rho2NoncompleteLower => Some(("complete_minus_edge", vec![n])),
        BoundId::Rho2TwoEdgesLower => Some(("complete_minus_two_nonincident_edges", vec![n])),
        BoundId::Rho2BipartiteLower => Some(("complete_bipartite", vec![n / 2, n - n / 2])),
        BoundId::Rho2TminLower => Some(("complete", vec![n])),
        _ => None,
    }
}

#[derive(Debug, Clone, Default, Serialize)]
struct BoundTally {
    applicable: usize,
    tight: usize,
    violated: usize,
    min_slack: Option<f64>,
}

/// Graphs scanned by the bound sweep: one per isomorphism class up to
/// `order`, then `random` seeded random connected graphs.
pub fn bound_sweep_graphs(order: usize, random: usize, seed: u64) -> Result<Vec<(Graph, bool)>> {
    let mut out = Vec::new();
    for n in 1..=order {
        out.extend(connected_graphs(n)?.into_iter().map(|g| (g, true)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        let n = rng.gen_range(RANDOM_ORDERS);
        let p = rng.gen_range(0.05..0.6);
        out.push((Graph::random_connected(n, p, &mut rng), false));
    }
    Ok(out)
}

/// Every bound on every swept graph, plus the equality characterizations
/// on the exhaustive part.
pub fn bounds_sweep(order: usize, random: usize, seed: u64) -> Result<SuiteReport> {
    let graphs = bound_sweep_graphs(order, random, seed)?;
    let results: Vec<Vec<BoundResult>> = graphs
        .par_iter()
        .map(|(g, _)| {
            let ctx = BoundContext::new(g)?;
            Ok(BoundId::ALL
                .iter()
                .flat_map(|&id| ctx.evaluate(id))
                .collect())
        })
        .collect::<Result<_>>()?;

    let mut report = SuiteReport::new(Suite::BoundsSweep, order);
    let mut tallies: BTreeMap<&'static str, BoundTally> = BoundId::ALL
        .iter()
        .map(|id| (id.as_str(), BoundTally::default()))
        .collect();
    let mut findings = Vec::new();
    let mut mismatches = 0;
    let mut lambda2_min: Option<f64> = None;

    for ((g, exhaustive), rs) in graphs.iter().zip(&results) {
        for r in rs.iter().filter(|r| r.applicable) {
            let slack = r.slack.expect("applicable bounds carry a slack");
            let t = tallies.get_mut(r.bound_id.as_str()).unwrap();
            t.applicable += 1;
            t.tight += r.tight as usize;
            t.violated += r.violated() as usize;
            t.min_slack = Some(t.min_slack.map_or(slack, |m| m.min(slack)));
            if r.bound_id == BoundId::Rho2VsLambda2 {
                lambda2_min = Some(lambda2_min.map_or(slack, |m| m.min(slack)));
            }
            let strict_fail = r.bound_id == BoundId::Rho2VsLambda2 && slack <= 0.0;
            if r.violated() || strict_fail {
                findings.push(bound_failure(g, r, "bound does not hold"));
            }
            if !*exhaustive {
                continue;
            }
            if let Some((name, params)) = equality_family(r.bound_id, g.order()) {
                let expected = is_family(g, name, &params);
                if expected != r.tight {
                    mismatches += 1;
                    let what = if r.tight {
                        format!("tight on a graph other than {name}{params:?}")
                    } else {
                        format!("not tight on {name}{params:?}")
                    };
                    findings.push(bound_failure(g, r, &what));
                }
            }
        }
    }
    report.absorb(findings);
    report.checked = graphs.len();
    report.data.insert(
        "graphs_exhaustive",
        json!(graphs.iter().filter(|g| g.1).count()),
    );
    report.data.insert("graphs_random", json!(random));
    report.data.insert("seed", json!(seed));
    report.data.insert("equality_mismatches", json!(mismatches));
    report.data.insert("lambda2_min_slack", json!(lambda2_min));
    report.data.insert(
        "bounds",
        serde_json::to_value(&tallies).expect("serializable"),
    );
    Ok(report)
}

fn bound_failure(g: &Graph, r: &BoundResult, what: &str) -> PropertyReport {
    let mut data = BTreeMap::new();
    data.insert("bound", serde_json::to_value(r).expect("serializable"));
    PropertyReport {
        property_id: r.bound_id.as_str(),
        instance: describe(g),
        holds: false,
        status: Status::Violated,
        counterexample: Some(Counterexample {
            vertices: (0..g.order()).collect(),
            values: vec![
                r.bound_value.unwrap_or(f64::NAN),
                r.actual_value.unwrap_or(f64::NAN),
            ],
            detail: what.to_string(),
        }),
        data,
    }
}
