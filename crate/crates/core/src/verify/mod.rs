//! Property checkers for the structural results on ρ₂ and Pareto
//! eigenvectors, plus exhaustive extremal searches.

mod extremal;
pub mod suites;
mod trees;

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{is_isomorphic, make_family, Graph};
use crate::pareto::{self, ParetoEigenpair};

pub use extremal::{extremal_search, ExtremalResult, EXTREMAL_MAX_ORDER};
pub use trees::{centers, tree_code, unlabeled_trees, TREE_MAX_ORDER};

/// Slack for strict convexity of eigenvector entries.
pub const CONVEXITY_TOL: f64 = 1e-12;
/// Relative slack for comparisons between ρ₂ values.
pub const RHO_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Violated,
    /// The inequality fails only within floating-point tolerance.
    Inconclusive,
    HypothesisFailed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub vertices: Vec<usize>,
    pub values: Vec<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub property_id: &'static str,
    pub instance: String,
    pub holds: bool,
    pub status: Status,
    pub counterexample: Option<Counterexample>,
    pub data: BTreeMap<&'static str, Value>,
}

impl PropertyReport {
    fn new(property_id: &'static str, g: &Graph) -> Self {
        PropertyReport {
            property_id,
            instance: describe(g),
            holds: true,
            status: Status::Holds,
            counterexample: None,
            data: BTreeMap::new(),
        }
    }

    /// Records a finding. A stronger status replaces a weaker one and keeps
    /// the first counterexample of that strength.
    fn flag(&mut self, status: Status, cx: Counterexample) {
        let rank = |s: Status| match s {
            Status::Holds => 0,
            Status::Inconclusive => 1,
            Status::Violated => 2,
            Status::HypothesisFailed => 3,
        };
        if rank(status) > rank(self.status) {
            self.status = status;
            self.holds = matches!(status, Status::Holds | Status::Inconclusive);
            self.counterexample = Some(cx);
        }
    }
}

/// Name if present, otherwise order and edge list.
pub fn describe(g: &Graph) -> String {
    match g.name() {
        Some(name) => name.to_string(),
        None => format!("order {} edges {:?}", g.order(), g.edges()),
    }
}

fn require_tree(t: &Graph) -> Result<()> {
    if !t.is_tree() {
        return Err(Error::NotATree(describe(t)));
    }
    Ok(())
}

/// Strict convexity `2x_j < x_i + x_k` of the eigenvector along every path
/// `i ~ j ~ k` inside the forest induced by the support.
pub fn check_eigenvector_convexity(t: &Graph, pair: &ParetoEigenpair) -> Result<PropertyReport> {
    require_tree(t)?;
    let mut report = PropertyReport::new("eigenvector_convexity", t);
    report.data.insert("support", json!(pair.support));
    report.data.insert("value", json!(pair.value));
    if pair.value <= 0.0 {
        return Ok(report);
    }
    let x = &pair.vector;
    let inside = |v: usize| x[v] > 0.0;
    let mut paths = 0usize;
    for j in (0..t.order()).filter(|&j| inside(j)) {
        let nb: Vec<usize> = t
            .neighbors(j)
            .iter()
            .copied()
            .filter(|&v| inside(v))
            .collect();
        for (a, &i) in nb.iter().enumerate() {
            for &k in &nb[a + 1..] {
                paths += 1;
                let diff = x[i] + x[k] - 2.0 * x[j];
                if diff > CONVEXITY_TOL {
                    continue;
                }
                let status = if diff < -CONVEXITY_TOL {
                    Status::Violated
                } else {
                    Status::Inconclusive
                };
                report.flag(
                    status,
                    Counterexample {
                        vertices: vec![i, j, k],
                        values: vec![x[i], x[j], x[k]],
                        detail: format!("x_i + x_k - 2x_j = {diff:e}"),
                    },
                );
            }
        }
    }
    report.data.insert("paths_checked", json!(paths));
    Ok(report)
}

/// Minimizers of a strictly quasiconvex function on a tree form one vertex
/// or an edge, and the function strictly increases moving away from them.
pub fn check_min_structure(t: &Graph, f: &[f64]) -> Result<PropertyReport> {
    require_tree(t)?;
    let n = t.order();
    if f.len() != n {
        return Err(Error::InvalidParams(format!(
            "function has {} values for a tree of order {n}",
            f.len()
        )));
    }
    let mut report = PropertyReport::new("min_structure", t);
    let scale = f.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let tol = CONVEXITY_TOL * scale;

    for j in 0..n {
        let nb = t.neighbors(j);
        for (a, &i) in nb.iter().enumerate() {
            for &k in &nb[a + 1..] {
                if f[j] >= f[i].max(f[k]) - tol {
                    report.flag(
                        Status::HypothesisFailed,
                        Counterexample {
                            vertices: vec![i, j, k],
                            values: vec![f[i], f[j], f[k]],
                            detail: "function is not strictly quasiconvex".into(),
                        },
                    );
                    return Ok(report);
                }
            }
        }
    }

    let min = f.iter().copied().fold(f64::INFINITY, f64::min);
    let minimizers: Vec<usize> = (0..n).filter(|&v| f[v] <= min + tol).collect();
    report.data.insert("minimizers", json!(minimizers));
    let shape_ok = match minimizers[..] {
        [_] => true,
        [a, b] => t.has_edge(a, b),
        _ => false,
    };
    if !shape_ok {
        report.flag(
            Status::Violated,
            Counterexample {
                vertices: minimizers.clone(),
                values: minimizers.iter().map(|&v| f[v]).collect(),
                detail: "minimum is not a single vertex or an edge".into(),
            },
        );
        return Ok(report);
    }

    let mut seen = vec![false; n];
    let mut queue: VecDeque<usize> = minimizers.iter().copied().collect();
    for &m in &minimizers {
        seen[m] = true;
    }
    while let Some(v) = queue.pop_front() {
        for &w in t.neighbors(v) {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            queue.push_back(w);
            if f[w] <= f[v] + tol {
                report.flag(
                    Status::Violated,
                    Counterexample {
                        vertices: vec![v, w],
                        values: vec![f[v], f[w]],
                        detail: "not strictly increasing away from the minimum".into(),
                    },
                );
            }
        }
    }
    Ok(report)
}

/// `ρ₂(G − e) >= ρ₂(G)`, strict whenever `e` avoids some vertex whose
/// deletion attains `ρ₂(G)`.
pub fn check_edge_monotonicity(g: &Graph, e: (usize, usize)) -> Result<PropertyReport> {
    let h = g.delete_edge(e.0, e.1)?;
    let before = pareto::rho2_fast(g)?;
    let after = pareto::rho2_fast(&h)?;
    let tol = RHO_TOL * before.value.abs().max(1.0);
    let strict = after.value > before.value + tol;
    let avoids = before.witnesses.iter().any(|&v| v != e.0 && v != e.1);

    let mut report = PropertyReport::new("edge_monotonicity", g);
    report.data.insert("edge", json!([e.0, e.1]));
    report.data.insert("before", json!(before.value));
    report.data.insert("after", json!(after.value));
    report.data.insert("strict", json!(strict));
    report.data.insert("witnesses", json!(before.witnesses));
    report.data.insert("avoids_some_witness", json!(avoids));

    let cx = |detail: &str| Counterexample {
        vertices: vec![e.0, e.1],
        values: vec![before.value, after.value],
        detail: detail.to_string(),
    };
    if after.value < before.value - tol {
        report.flag(
            Status::Violated,
            cx("rho2 decreased after deleting the edge"),
        );
    } else if avoids && !strict {
        // Genuine equality rather than rounding noise.
        let status = if (after.value - before.value).abs() <= 1e-12 * before.value.abs().max(1.0) {
            Status::Violated
        } else {
            Status::Inconclusive
        };
        report.flag(
            status,
            cx("edge avoids a rho2 witness but rho2 did not increase"),
        );
    }
    Ok(report)
}

/// Strict quasiconvexity of `i ↦ ρ₂(T_i * H_w)` along paths of the tree,
/// together with the fixed-deletion inequality
/// `ρ^u(G^i) + ρ^u(G^k) >= 2ρ^u(G^j)` for every vertex `u`.
pub fn check_coalescence_quasiconvexity(t: &Graph, h: &Graph, w: usize) -> Result<PropertyReport> {
    require_tree(t)?;
    if t.order() < 3 || h.order() < 2 {
        return Err(Error::InvalidParams(format!(
            "need a tree with at least 3 vertices and a graph with at least 2, got {} and {}",
            t.order(),
            h.order()
        )));
    }
    h.distance_matrix()?;
    let coalesced: Vec<Graph> = (0..t.order())
        .map(|i| t.coalesce(i, h, w))
        .collect::<Result<_>>()?;
    let dms = coalesced
        .iter()
        .map(|g| g.distance_matrix())
        .collect::<Result<Vec<_>>>()?;
    let rho2: Vec<f64> = coalesced
        .iter()
        .zip(&dms)
        .map(|(g, dm)| pareto::rho2_of(g, dm).map(|r| r.value))
        .collect::<Result<_>>()?;
    let big_n = coalesced[0].order();
    let deletion: Vec<Vec<f64>> = dms
        .iter()
        .map(|dm| (0..big_n).map(|u| pareto::deletion_radius(dm, u)).collect())
        .collect::<Result<_>>()?;

    let mut report = PropertyReport::new("coalescence_quasiconvexity", t);
    report.instance = format!("tree {} with {} at {w}", describe(t), describe(h));
    report.data.insert("rho2", json!(rho2));

    let mut flat_deletions = Vec::new();
    for j in 0..t.order() {
        let nb = t.neighbors(j);
        for (a, &i) in nb.iter().enumerate() {
            for &k in &nb[a + 1..] {
                let tol = RHO_TOL * rho2[j].abs().max(1.0);
                let margin = rho2[i].max(rho2[k]) - rho2[j];
                if margin <= tol {
                    let status = if margin < -tol {
                        Status::Violated
                    } else {
                        Status::Inconclusive
                    };
                    report.flag(
                        status,
                        Counterexample {
                            vertices: vec![i, j, k],
                            values: vec![rho2[i], rho2[j], rho2[k]],
                            detail: "rho2 of the middle coalescence is not below both ends".into(),
                        },
                    );
                }
                for u in 0..big_n {
                    let (ri, rj, rk) = (deletion[i][u], deletion[j][u], deletion[k][u]);
                    let tol = RHO_TOL * rj.abs().max(1.0);
                    let gap = ri + rk - 2.0 * rj;
                    if ri.max(rk) - rj <= tol {
                        // No strict rise: happens when deleting `u` leaves
                        // the same matrix in all three graphs.
                        flat_deletions.push(json!([i, j, k, u]));
                    }
                    if gap >= -tol {
                        continue;
                    }
                    report.flag(
                        Status::Violated,
                        Counterexample {
                            vertices: vec![i, j, k, u],
                            values: vec![ri, rj, rk],
                            detail: format!("fixed deletion of vertex {u}: sum gap {gap:e}"),
                        },
                    );
                }
            }
        }
    }
    report.data.insert("flat_deletions", json!(flat_deletions));
    Ok(report)
}

/// Among all trees of order `n`, ρ₂ is uniquely largest at the path and
/// uniquely smallest at the star.
pub fn check_tree_extremes(n: usize) -> Result<PropertyReport> {
    if n < 3 {
        return Err(Error::InvalidParams(format!(
            "tree extremes need n >= 3, got {n}"
        )));
    }
    let trees = unlabeled_trees(n)?;
    let path = make_family("path", &[n])?;
    let star = make_family("star", &[n])?;
    let values: Vec<f64> = trees
        .iter()
        .map(|t| pareto::rho2_fast(t).map(|r| r.value))
        .collect::<Result<_>>()?;
    let pos = |g: &Graph| {
        trees
            .iter()
            .position(|t| tree_code(t) == tree_code(g))
            .unwrap()
    };
    let (ip, is) = (pos(&path), pos(&star));

    let mut report = PropertyReport::new("tree_extremes", &path);
    report.instance = format!("all {} trees of order {n}", trees.len());
    report.data.insert("trees", json!(trees.len()));
    report.data.insert("path_rho2", json!(values[ip]));
    report.data.insert("star_rho2", json!(values[is]));

    for (idx, &v) in values.iter().enumerate() {
        let tol = RHO_TOL * v.abs().max(1.0);
        if idx != ip && v >= values[ip] - tol {
            let status = if v > values[ip] + tol {
                Status::Violated
            } else {
                Status::Inconclusive
            };
            report.flag(
                status,
                Counterexample {
                    vertices: (0..n).collect(),
                    values: vec![v, values[ip]],
                    detail: format!("tree {:?} reaches the path value", trees[idx].edges()),
                },
            );
        }
        if idx != is && v <= values[is] + tol {
            let status = if v < values[is] - tol {
                Status::Violated
            } else {
                Status::Inconclusive
            };
            report.flag(
                status,
                Counterexample {
                    vertices: (0..n).collect(),
                    values: vec![v, values[is]],
                    detail: format!("tree {:?} reaches the star value", trees[idx].edges()),
                },
            );
        }
    }
    Ok(report)
}

/// Whether `g` is isomorphic to the named family member; false for orders
/// the family does not cover.
pub(crate) fn is_family(g: &Graph, name: &str, params: &[usize]) -> bool {
    make_family(name, params).is_ok_and(|f| f.order() == g.order() && is_isomorphic(&f, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pareto::pareto_eigenpair;

    fn fam(name: &str, params: &[usize]) -> Graph {
        make_family(name, params).unwrap()
    }

    #[test]
    fn convexity_examples() {
        let p4 = fam("path", &[4]);
        let pair = pareto_eigenpair(&p4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(
            check_eigenvector_convexity(&p4, &pair).unwrap().status,
            Status::Holds
        );

        let p3 = fam("path", &[3]);
        let pair = pareto_eigenpair(&p3, &[0, 2]).unwrap();
        let r = check_eigenvector_convexity(&p3, &pair).unwrap();
        assert!(r.holds);
        assert_eq!(r.data["paths_checked"], json!(0));

        let s5 = fam("star", &[5]);
        let pair = pareto_eigenpair(&s5, &[0, 1, 2, 3, 4]).unwrap();
        assert!(pair.vector[0] < pair.vector[1]);
        assert!(check_eigenvector_convexity(&s5, &pair).unwrap().holds);

        assert!(matches!(
            check_eigenvector_convexity(&fam("cycle", &[4]), &pair),
            Err(Error::NotATree(_))
        ));
    }

    #[test]
    fn min_structure_examples() {
        let p3 = fam("path", &[3]);
        let r = check_min_structure(&p3, &[3.0, 1.0, 3.0]).unwrap();
        assert!(r.holds);
        assert_eq!(r.data["minimizers"], json!([1]));

        let p4 = fam("path", &[4]);
        let r = check_min_structure(&p4, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        assert!(r.holds);
        assert_eq!(r.data["minimizers"], json!([1, 2]));

        let p5 = fam("path", &[5]);
        let x = pareto_eigenpair(&p5, &[0, 1, 2, 3, 4]).unwrap().vector;
        let r = check_min_structure(&p5, &x).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.data["minimizers"], json!([2]));

        let r = check_min_structure(&p3, &[1.0, 2.0, 1.0]).unwrap();
        assert_eq!(r.status, Status::HypothesisFailed);
        assert!(!r.holds);
        assert!(r.counterexample.is_some());
    }

    #[test]
    fn monotonicity_examples() {
        let w6 = fam("wheel", &[6]);
        let r = check_edge_monotonicity(&w6, (0, 1)).unwrap();
        assert!(r.holds);
        assert_eq!(r.data["strict"], json!(false));
        assert!((r.data["before"].as_f64().unwrap() - 6.0).abs() < 1e-12);
        assert!((r.data["after"].as_f64().unwrap() - 6.0).abs() < 1e-12);

        let k4 = fam("complete", &[4]);
        let r = check_edge_monotonicity(&k4, (1, 2)).unwrap();
        assert_eq!(r.data["strict"], json!(true));
        assert!((r.data["after"].as_f64().unwrap() - (1.0 + 3f64.sqrt())).abs() < 1e-12);

        let c4 = fam("cycle", &[4]);
        let r = check_edge_monotonicity(&c4, (0, 1)).unwrap();
        assert!(r.holds && r.data["strict"] == json!(true));

        assert!(matches!(
            check_edge_monotonicity(&fam("path", &[3]), (0, 1)),
            Err(Error::Disconnected { .. })
        ));
    }

    #[test]
    fn coalescence_examples() {
        let k2 = fam("complete", &[2]);
        let r = check_coalescence_quasiconvexity(&fam("path", &[3]), &k2, 0).unwrap();
        assert!(r.holds, "{r:?}");
        let rho: Vec<f64> = serde_json::from_value(r.data["rho2"].clone()).unwrap();
        assert!(rho[1] < rho[0] && rho[1] < rho[2]);

        let r = check_coalescence_quasiconvexity(&fam("path", &[5]), &fam("complete", &[3]), 0)
            .unwrap();
        assert_eq!(r.status, Status::Holds);

        let r = check_coalescence_quasiconvexity(&fam("star", &[4]), &k2, 1).unwrap();
        let rho: Vec<f64> = serde_json::from_value(r.data["rho2"].clone()).unwrap();
        assert!(rho[1] > rho[0]);
        assert!(r.holds);

        assert!(check_coalescence_quasiconvexity(&fam("path", &[2]), &k2, 0).is_err());
    }

    #[test]
    fn tree_extremes_small() {
        for n in 3..=6 {
            let r = check_tree_extremes(n).unwrap();
            assert_eq!(r.status, Status::Holds, "n={n}: {r:?}");
        }
        let r = check_tree_extremes(4).unwrap();
        assert!((r.data["star_rho2"].as_f64().unwrap() - 4.0).abs() < 1e-12);
        assert!((r.data["path_rho2"].as_f64().unwrap() - 4.11309).abs() < 1e-4);
        let r = check_tree_extremes(5).unwrap();
        assert_eq!(r.data["trees"], json!(3));
        assert!((r.data["star_rho2"].as_f64().unwrap() - 6.0).abs() < 1e-12);
        assert!(check_tree_extremes(10).is_err());
    }
}
