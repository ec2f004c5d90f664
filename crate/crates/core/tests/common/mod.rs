//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use distpareto::Graph;
use nalgebra::DMatrix;

/// All-pairs distances by Floyd-Warshall; `None` when disconnected.
pub fn floyd(g: &Graph) -> Option<Vec<Vec<u32>>> {
    let n = g.order();
    const INF: u32 = u32::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d.iter().flatten().all(|&x| x < INF).then_some(d)
}

pub fn to_dmatrix(rows: &[Vec<f64>]) -> DMatrix<f64> {
    let n = rows.len();
    DMatrix::from_fn(n, n, |i, j| rows[i][j])
}

/// Eigenvalues ascending, by nalgebra.
pub fn eigenvalues(rows: &[Vec<f64>]) -> Vec<f64> {
    let mut ev: Vec<f64> = to_dmatrix(rows)
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn largest(rows: &[Vec<f64>]) -> f64 {
    *eigenvalues(rows).last().unwrap()
}

pub fn submatrix(d: &[Vec<u32>], keep: &[usize]) -> Vec<Vec<f64>> {
    keep.iter()
        .map(|&i| keep.iter().map(|&j| d[i][j] as f64).collect())
        .collect()
}

/// Distinct Perron roots of all principal submatrices, enumerated from the
/// full mask downwards and merged greedily after sorting.
pub fn oracle_spectrum(g: &Graph) -> Vec<f64> {
    let d = floyd(g).expect("connected");
    let n = g.order();
    let mut roots: Vec<f64> = (1u32..1 << n)
        .rev()
        .map(|mask| {
            let keep: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            largest(&submatrix(&d, &keep))
        })
        .collect();
    roots.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::new();
    for r in roots {
        match out.last() {
            Some(&last) if (r - last).abs() <= 1e-8 * last.abs().max(1.0) => {}
            _ => out.push(r),
        }
    }
    out
}

/// Second largest Pareto eigenvalue as the largest Perron root over all
/// vertex deletions (no pendant shortcut).
pub fn oracle_rho2(g: &Graph) -> f64 {
    let d = floyd(g).expect("connected");
    let n = g.order();
    (0..n)
        .map(|v| {
            let keep: Vec<usize> = (0..n).filter(|&u| u != v).collect();
            largest(&submatrix(&d, &keep))
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

pub fn assert_close_vec(a: &[f64], b: &[f64], tol: f64) {
    assert_eq!(a.len(), b.len(), "{a:?} vs {b:?}");
    for (x, y) in a.iter().zip(b) {
        assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
    }
}
