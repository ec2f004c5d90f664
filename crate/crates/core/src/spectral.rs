//! Dense symmetric eigenproblems for small nonnegative matrices.
//!
//! Everything here goes through a cyclic Jacobi decomposition. Distance
//! submatrices are at most 20x20, Jacobi converges in a handful of sweeps on
//! them and gives every eigenvalue to near machine precision, which the
//! Pareto-spectrum deduplication relies on.

use crate::error::{Error, Result};
use crate::graph::DistanceMatrix;

/// Jacobi sweep cap.
pub const MAX_SWEEPS: usize = 100;
/// Residual contract: `|M x - λ x|_∞ <= RESIDUAL_TOL * max(1, |λ|)`.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Perron vector entries of irreducible inputs must exceed this.
pub const POSITIVITY_TOL: f64 = 1e-12;
/// Largest `b` accepted by [`dominates`].
pub const DOMINANCE_MAX_ORDER: usize = 8;

/// Real symmetric matrix with nonnegative entries, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    k: usize,
    a: Vec<f64>,
}

impl SymMatrix {
    /// Builds from the upper triangle of `f`, mirrored.
    pub fn from_fn(k: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut a = vec![0.0; k * k];
        for i in 0..k {
            for j in i..k {
                let x = f(i, j);
                a[i * k + j] = x;
                a[j * k + i] = x;
            }
        }
        SymMatrix { k, a }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::InvalidParams("matrix has no rows".into()));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != k {
                return Err(Error::InvalidParams(format!(
                    "row {i} has {} entries, expected {k}",
                    r.len()
                )));
            }
            for (j, &x) in r.iter().enumerate() {
                if !x.is_finite() || x < 0.0 {
                    return Err(Error::InvalidParams(format!(
                        "entry ({i},{j}) = {x} is not a finite nonnegative number"
                    )));
                }
                if rows[j][i] != x {
                    return Err(Error::InvalidParams(format!("not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(SymMatrix::from_fn(k, |i, j| rows[i][j]))
    }

    pub fn from_distance(dm: &DistanceMatrix) -> Self {
        SymMatrix::from_fn(dm.order(), |i, j| dm.get(i, j) as f64)
    }

    /// `c (J_k - I_k)`.
    pub fn scaled_ones_minus_identity(k: usize, c: f64) -> Self {
        SymMatrix::from_fn(k, |i, j| if i == j { 0.0 } else { c })
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.k + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.a[i * self.k..(i + 1) * self.k]
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.k).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.k)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// The off-diagonal nonzero pattern is connected.
    pub fn is_irreducible(&self) -> bool {
        let mut seen = vec![false; self.k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..self.k {
                if !seen[j] && i != j && self.get(i, j) != 0.0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// An eigenpair with its residual `|M x - λ x|_∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
}

/// Cyclic Jacobi on a dense row-major `k x k` buffer. On return the
/// diagonal holds the eigenvalues and, if given, the columns of `vecs` the
/// eigenvectors.
fn jacobi(a: &mut [f64], k: usize, mut vecs: Option<&mut [f64]>) -> Result<()> {
    if let Some(v) = vecs.as_deref_mut() {
        v.iter_mut().for_each(|x| *x = 0.0);
        for i in 0..k {
            v[i * k + i] = 1.0;
        }
    }
    let total: f64 = a.iter().map(|x| x * x).sum();
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..k {
            for q in p + 1..k {
                off += a[p * k + q] * a[p * k + q];
            }
        }
        if off <= 1e-32 * total {
            return Ok(());
        }
        for p in 0..k {
            for q in p + 1..k {
                let apq = a[p * k + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * k + q] - a[p * k + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..k {
                    let (x, y) = (a[r * k + p], a[r * k + q]);
                    a[r * k + p] = c * x - s * y;
                    a[r * k + q] = s * x + c * y;
                }
                for r in 0..k {
                    let (x, y) = (a[p * k + r], a[q * k + r]);
                    a[p * k + r] = c * x - s * y;
                    a[q * k + r] = s * x + c * y;
                }
                a[p * k + q] = 0.0;
                a[q * k + p] = 0.0;
                if let Some(v) = vecs.as_deref_mut() {
                    for r in 0..k {
                        let (x, y) = (v[r * k + p], v[r * k + q]);
                        v[r * k + p] = c * x - s * y;
                        v[r * k + q] = s * x + c * y;
                    }
                }
            }
        }
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

/// Largest eigenvalue of the symmetric `k x k` matrix in `buf`
/// (overwritten). Eigenvalues only; used in the subset enumeration loop.
pub(crate) fn largest_eigenvalue_in_place(buf: &mut [f64], k: usize) -> Result<f64> {
    match k {
        0 => Err(Error::EmptySubset),
        1 => Ok(buf[0]),
        2 => {
            let (a, b, d) = (buf[0], buf[1], buf[3]);
            Ok(0.5 * (a + d) + (0.25 * (a - d) * (a - d) + b * b).sqrt())
        }
        _ => {
            jacobi(buf, k, None)?;
            Ok((0..k)
                .map(|i| buf[i * k + i])
                .fold(f64::NEG_INFINITY, f64::max))
        }
    }
}

fn residual(m: &SymMatrix, value: f64, x: &[f64]) -> f64 {
    m.mul_vec(x)
        .iter()
        .zip(x)
        .map(|(mx, xi)| (mx - value * xi).abs())
        .fold(0.0, f64::max)
}

fn check_residual(r: f64, value: f64) -> Result<()> {
    if r > RESIDUAL_TOL * value.abs().max(1.0) {
        return Err(Error::Numerical(format!(
            "eigenpair residual {r:e} exceeds tolerance for eigenvalue {value}"
        )));
    }
    Ok(())
}

/// Ascending eigenvalues with unit eigenvectors.
pub fn symmetric_eigen(m: &SymMatrix) -> Result<Vec<EigenResult>> {
    let k = m.k;
    let mut a = m.a.clone();
    let mut v = vec![0.0; k * k];
    jacobi(&mut a, k, Some(&mut v))?;
    let mut pairs: Vec<EigenResult> = (0..k)
        .map(|j| {
            let value = a[j * k + j];
            let vector: Vec<f64> = (0..k).map(|i| v[i * k + j]).collect();
            let residual = residual(m, value, &vector);
            EigenResult {
                value,
                vector,
                residual,
            }
        })
        .collect();
    pairs.sort_by(|x, y| x.value.total_cmp(&y.value));
    for p in &pairs {
        check_residual(p.residual, p.value)?;
    }
    Ok(pairs)
}

/// Largest eigenvalue `ρ(M)` with a unit eigenvector whose entries sum to a
/// nonnegative number. For irreducible input this is the Perron vector and
/// every entry is checked to be positive.
pub fn spectral_radius(m: &SymMatrix) -> Result<EigenResult> {
    if m.k == 1 {
        return Ok(EigenResult {
            value: m.a[0],
            vector: vec![1.0],
            residual: 0.0,
        });
    }
    let mut top = symmetric_eigen(m)?.pop().expect("k >= 1");
    if top.vector.iter().sum::<f64>() < 0.0 {
        top.vector.iter_mut().for_each(|x| *x = -*x);
    }
    if m.is_irreducible() {
        let min = top.vector.iter().copied().fold(f64::INFINITY, f64::min);
        if min <= POSITIVITY_TOL {
            return Err(Error::Numerical(format!(
                "Perron vector of an irreducible matrix has entry {min:e}"
            )));
        }
    }
    Ok(top)
}

/// All eigenvalues, ascending.
pub fn full_spectrum(m: &SymMatrix) -> Result<Vec<f64>> {
    Ok(symmetric_eigen(m)?.into_iter().map(|p| p.value).collect())
}

/// Rows and columns `keep`, taken in ascending order.
pub fn principal_submatrix(m: &SymMatrix, keep: &[usize]) -> Result<SymMatrix> {
    let mut idx = keep.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if idx.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(&v) = idx.iter().find(|&&v| v >= m.k) {
        return Err(Error::VertexOutOfRange { v, n: m.k });
    }
    Ok(SymMatrix::from_fn(idx.len(), |i, j| m.get(idx[i], idx[j])))
}

/// `xᵀMx / xᵀx`.
pub fn rayleigh(m: &SymMatrix, x: &[f64]) -> Result<f64> {
    if x.len() != m.k {
        return Err(Error::InvalidParams(format!(
            "vector length {} does not match order {}",
            x.len(),
            m.k
        )));
    }
    let norm: f64 = x.iter().map(|v| v * v).sum();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let quad: f64 = m.mul_vec(x).iter().zip(x).map(|(a, b)| a * b).sum();
    Ok(quad / norm)
}

/// Whether `a` dominates `b`: either they have the same order and some
/// simultaneous permutation of `b` is entrywise `<= a` without being equal,
/// or `b` equals a principal block of `a` (entries compared exactly) whose
/// complementary blocks are not all zero.
pub fn dominates(a: &SymMatrix, b: &SymMatrix) -> Result<bool> {
    if b.k > DOMINANCE_MAX_ORDER {
        return Err(Error::CapExceeded {
            what: "dominance search",
            got: b.k,
            limit: DOMINANCE_MAX_ORDER,
        });
    }
    if a.k < b.k {
        return Ok(false);
    }
    let mut map = Vec::with_capacity(b.k);
    let mut used = vec![false; a.k];
    if a.k == b.k {
        Ok(embed(a, b, &mut map, &mut used, &|x, y| x >= y, &|map| {
            (0..b.k).any(|i| (0..b.k).any(|j| a.get(map[i], map[j]) > b.get(i, j)))
        }))
    } else {
        Ok(embed(a, b, &mut map, &mut used, &|x, y| x == y, &|map| {
            let mut inside = vec![false; a.k];
            map.iter().for_each(|&r| inside[r] = true);
            (0..a.k).any(|r| (0..a.k).any(|c| (!inside[r] || !inside[c]) && a.get(r, c) != 0.0))
        }))
    }
}

/// Backtracking search for an injective index map `b -> a` whose entries
/// satisfy `rel(a, b)` and whose completed map passes `accept`.
fn embed(
    a: &SymMatrix,
    b: &SymMatrix,
    map: &mut Vec<usize>,
    used: &mut [bool],
    rel: &dyn Fn(f64, f64) -> bool,
    accept: &dyn Fn(&[usize]) -> bool,
) -> bool {
    let i = map.len();
    if i == b.k {
        return accept(map);
    }
    for r in 0..a.k {
        if used[r] {
            continue;
        }
        let fits =
            rel(a.get(r, r), b.get(i, i)) && (0..i).all(|j| rel(a.get(r, map[j]), b.get(i, j)));
        if !fits {
            continue;
        }
        used[r] = true;
        map.push(r);
        if embed(a, b, map, used, rel, accept) {
            return true;
        }
        map.pop();
        used[r] = false;
    }
    false
}
