//! Distance Pareto spectra.
//!
//! A real λ is a Pareto eigenvalue of `D` if some nonzero `x >= 0` has
//! `D x >= λ x` and `λ = xᵀDx / xᵀx`. For a distance matrix these are exactly
//! the Perron roots of its principal submatrices, so the spectrum is computed
//! by enumerating every nonempty vertex subset.

use std::cmp::Ordering;
use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::spectral::{self, largest_eigenvalue_in_place, SymMatrix};

/// Largest order accepted by the subset enumeration (`2^20 - 1` subsets).
pub const DEFAULT_MAX_ORDER: usize = 20;
/// Relative tolerance under which two Perron roots are the same value.
pub const DEDUP_TOLERANCE: f64 = 1e-8;
/// Largest order for [`distinct_submatrix_count`].
pub const SUBMATRIX_CLASS_MAX_ORDER: usize = 8;
/// Relative tolerance for ties between vertex-deletion radii.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// `|a - b| <= tol * max(1, |b|)`.
pub fn same_value(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[derive(Debug, Clone)]
pub struct SpectrumOptions {
    pub max_order: usize,
    pub tolerance: f64,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    /// Number of contiguous subset ranges; `None` picks four per worker.
    pub partitions: Option<usize>,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            max_order: DEFAULT_MAX_ORDER,
            tolerance: DEDUP_TOLERANCE,
            jobs: None,
            partitions: None,
        }
    }
}

/// Distinct Pareto eigenvalues, ascending, each with the smallest witness
/// subset (fewest vertices, then lexicographically first).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParetoSpectrum {
    pub values: Vec<f64>,
    pub witnesses: Vec<Vec<usize>>,
    pub dedup_tolerance: f64,
    pub graph_order: usize,
}

impl ParetoSpectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.values
            .iter()
            .any(|&v| same_value(x, v, self.dedup_tolerance))
    }

    /// k-th largest value, `k >= 1`.
    pub fn rho(&self, k: usize) -> Result<f64> {
        self.rank_check(k)?;
        Ok(self.values[self.len() - k])
    }

    /// k-th smallest value, `k >= 1`.
    pub fn mu(&self, k: usize) -> Result<f64> {
        self.rank_check(k)?;
        Ok(self.values[k - 1])
    }

    fn rank_check(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.len() {
            return Err(Error::RankOutOfRange { k, len: self.len() });
        }
        Ok(())
    }
}

fn mask_vertices(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| (mask >> i) & 1 == 1).collect()
}

/// Witness order: fewer vertices first, then lexicographic on the sorted
/// vertex lists.
pub(crate) fn witness_cmp(a: u32, b: u32) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| {
        if a == b {
            return Ordering::Equal;
        }
        // The lowest differing vertex belongs to the lexicographically
        // smaller list.
        let diff = a ^ b;
        if a & diff & diff.wrapping_neg() != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    })
}

fn dense(dm: &DistanceMatrix) -> Vec<f64> {
    let n = dm.order();
    (0..n * n).map(|k| dm.get(k / n, k % n) as f64).collect()
}

/// Perron roots of `D[S]` for every mask in `lo..hi`.
fn roots_in_range(d: &[f64], n: usize, lo: u32, hi: u32) -> Result<Vec<(f64, u32)>> {
    let mut buf = vec![0.0; n * n];
    let mut idx = Vec::with_capacity(n);
    let mut out = Vec::with_capacity((hi - lo) as usize);
    for mask in lo..hi {
        idx.clear();
        let mut m = mask;
        while m != 0 {
            idx.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        let k = idx.len();
        for (r, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                buf[r * k + c] = d[i * n + j];
            }
        }
        out.push((largest_eigenvalue_in_place(&mut buf[..k * k], k)?, mask));
    }
    Ok(out)
}

fn check_cap(n: usize, limit: usize) -> Result<()> {
    let limit = limit.min(31);
    if n > limit {
        return Err(Error::CapExceeded {
            what: "Pareto spectrum enumeration",
            got: n,
            limit,
        });
    }
    Ok(())
}

/// Sorts `(root, mask)` pairs and merges chains of values within tolerance.
fn dedup(mut roots: Vec<(f64, u32)>, tol: f64, n: usize) -> ParetoSpectrum {
    roots.sort_by(|x, y| x.0.total_cmp(&y.0).then_with(|| witness_cmp(x.1, y.1)));
    let mut values = Vec::new();
    let mut witnesses = Vec::new();
    let mut i = 0;
    while i < roots.len() {
        let mut j = i + 1;
        while j < roots.len() && same_value(roots[j - 1].0, roots[j].0, tol) {
            j += 1;
        }
        let best = roots[i..j]
            .iter()
            .min_by(|x, y| witness_cmp(x.1, y.1))
            .expect("nonempty cluster");
        values.push(best.0);
        witnesses.push(mask_vertices(best.1));
        i = j;
    }
    ParetoSpectrum {
        values,
        witnesses,
        dedup_tolerance: tol,
        graph_order: n,
    }
}

pub fn pareto_spectrum(g: &Graph) -> Result<ParetoSpectrum> {
    pareto_spectrum_with(g, &SpectrumOptions::default())
}

/// Enumerates every nonempty subset in parallel over contiguous mask
/// ranges. The result does not depend on the worker or partition count.
pub fn pareto_spectrum_with(g: &Graph, opts: &SpectrumOptions) -> Result<ParetoSpectrum> {
    check_cap(g.order(), opts.max_order)?;
    let dm = g.distance_matrix()?;
    spectrum_of_distance(&dm, opts)
}

pub fn spectrum_of_distance(dm: &DistanceMatrix, opts: &SpectrumOptions) -> Result<ParetoSpectrum> {
    let n = dm.order();
    check_cap(n, opts.max_order)?;
    if n == 0 {
        return Err(Error::EmptySubset);
    }
    let d = dense(dm);
    let total = 1u32 << n;
    let run = || -> Result<ParetoSpectrum> {
        let workers = rayon::current_num_threads();
        let parts = opts
            .partitions
            .unwrap_or(4 * workers)
            .clamp(1, (total - 1) as usize);
        let step = (total - 1).div_ceil(parts as u32);
        let chunks: Vec<Vec<(f64, u32)>> = (0..parts as u32)
            .into_par_iter()
            .map(|p| {
                let lo = 1 + p * step;
                let hi = (lo + step).min(total);
                if lo >= hi {
                    Ok(Vec::new())
                } else {
                    roots_in_range(&d, n, lo, hi)
                }
            })
            .collect::<Result<_>>()?;
        Ok(dedup(chunks.concat(), opts.tolerance, n))
    };
    match opts.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::InvalidParams(e.to_string()))?
            .install(run),
        None => run(),
    }
}

pub fn pareto_count(g: &Graph) -> Result<usize> {
    Ok(pareto_spectrum(g)?.len())
}

/// k-th largest distance Pareto eigenvalue.
pub fn rho_k(g: &Graph, k: usize) -> Result<f64> {
    pareto_spectrum(g)?.rho(k)
}

/// k-th smallest distance Pareto eigenvalue.
pub fn mu_k(g: &Graph, k: usize) -> Result<f64> {
    pareto_spectrum(g)?.mu(k)
}

/// `ρ(D(v))`, the Perron root after deleting row and column `v`.
pub fn deletion_radius(dm: &DistanceMatrix, v: usize) -> Result<f64> {
    let n = dm.order();
    if v >= n {
        return Err(Error::VertexOutOfRange { v, n });
    }
    if n == 1 {
        return Err(Error::EmptySubset);
    }
    let keep: Vec<usize> = (0..n).filter(|&u| u != v).collect();
    let k = keep.len();
    let mut buf: Vec<f64> = (0..k * k)
        .map(|x| dm.get(keep[x / k], keep[x % k]) as f64)
        .collect();
    largest_eigenvalue_in_place(&mut buf, k)
}

/// Second largest Pareto eigenvalue together with the deleted vertices
/// achieving it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rho2 {
    pub value: f64,
    /// Smallest vertex whose deletion attains `value`.
    pub witness: usize,
    /// Every non-pendant vertex whose deletion attains `value`.
    pub witnesses: Vec<usize>,
}

/// `ρ₂(G)` as the largest `ρ(D(v))` over vertices of degree above one.
/// Deleting a pendant vertex is always beaten by deleting its neighbor, so
/// pendant vertices are skipped; `K₂` falls back to all vertices.
pub fn rho2_fast(g: &Graph) -> Result<Rho2> {
    let dm = g.distance_matrix()?;
    rho2_of(g, &dm)
}

pub fn rho2_of(g: &Graph, dm: &DistanceMatrix) -> Result<Rho2> {
    let n = g.order();
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "second largest Pareto eigenvalue needs at least 2 vertices, got {n}"
        )));
    }
    let mut candidates: Vec<usize> = (0..n).filter(|&v| g.degree(v) > 1).collect();
    if candidates.is_empty() {
        candidates = (0..n).collect();
    }
    let radii: Vec<(usize, f64)> = candidates
        .into_iter()
        .map(|v| deletion_radius(dm, v).map(|r| (v, r)))
        .collect::<Result<_>>()?;
    let value = radii
        .iter()
        .map(|&(_, r)| r)
        .fold(f64::NEG_INFINITY, f64::max);
    let witnesses: Vec<usize> = radii
        .iter()
        .filter(|&&(_, r)| same_value(r, value, TIE_TOLERANCE))
        .map(|&(v, _)| v)
        .collect();
    let witness = witnesses[0];
    Ok(Rho2 {
        value: radii[radii.iter().position(|&(v, _)| v == witness).unwrap()].1,
        witness,
        witnesses,
    })
}

/// A Pareto eigenpair of `D(G)`: the Perron pair of `D[J]` embedded with
/// zeros off `J`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParetoEigenpair {
    pub value: f64,
    pub support: Vec<usize>,
    pub vector: Vec<f64>,
}

impl ParetoEigenpair {
    /// Checks `D x >= λ x` entrywise and `λ = xᵀDx / xᵀx`, with `x >= 0`
    /// and nonzero, up to `tol` scaled by `max(1, λ)`.
    pub fn satisfies_definition(&self, d: &SymMatrix, tol: f64) -> bool {
        let scale = self.value.abs().max(1.0);
        if self.vector.iter().any(|&x| x < 0.0) || self.vector.iter().all(|&x| x == 0.0) {
            return false;
        }
        let dx = d.mul_vec(&self.vector);
        let complementary = dx
            .iter()
            .zip(&self.vector)
            .all(|(a, x)| a - self.value * x >= -tol * scale);
        let quotient = match spectral::rayleigh(d, &self.vector) {
            Ok(q) => q,
            Err(_) => return false,
        };
        complementary && (quotient - self.value).abs() <= tol * scale
    }
}

pub fn pareto_eigenpair(g: &Graph, support: &[usize]) -> Result<ParetoEigenpair> {
    pareto_eigenpair_in(&g.distance_matrix()?, support)
}

pub fn pareto_eigenpair_in(dm: &DistanceMatrix, support: &[usize]) -> Result<ParetoEigenpair> {
    let full = SymMatrix::from_distance(dm);
    let sub = spectral::principal_submatrix(&full, support)?;
    let mut support = support.to_vec();
    support.sort_unstable();
    support.dedup();
    let perron = spectral::spectral_radius(&sub)?;
    let mut vector = vec![0.0; dm.order()];
    for (&v, &x) in support.iter().zip(&perron.vector) {
        vector[v] = x;
    }
    let pair = ParetoEigenpair {
        value: perron.value,
        support,
        vector,
    };
    if !pair.satisfies_definition(&full, 1e-9) {
        return Err(Error::Numerical(format!(
            "eigenpair on support {:?} fails the complementarity conditions",
            pair.support
        )));
    }
    Ok(pair)
}

/// Number of principal submatrices of `D(G)` up to simultaneous row and
/// column permutation.
pub fn distinct_submatrix_count(g: &Graph) -> Result<usize> {
    let n = g.order();
    if n > SUBMATRIX_CLASS_MAX_ORDER {
        return Err(Error::CapExceeded {
            what: "submatrix classification",
            got: n,
            limit: SUBMATRIX_CLASS_MAX_ORDER,
        });
    }
    let dm = g.distance_matrix()?;
    let mut classes = HashSet::new();
    for mask in 1u32..(1 << n) {
        let idx = mask_vertices(mask);
        classes.insert(canonical_submatrix(&dm, &idx));
    }
    Ok(classes.len())
}

/// Lexicographically smallest row-major flattening over all orderings of
/// `idx`.
fn canonical_submatrix(dm: &DistanceMatrix, idx: &[usize]) -> Vec<u32> {
    let k = idx.len();
    let mut perm = idx.to_vec();
    let mut best: Option<Vec<u32>> = None;
    let mut cur = vec![0u32; k * k];
    permute(&mut perm, 0, &mut |p| {
        for r in 0..k {
            for c in 0..k {
                cur[r * k + c] = dm.get(p[r], p[c]);
            }
        }
        if best.as_ref().is_none_or(|b| cur < *b) {
            best = Some(cur.clone());
        }
    });
    best.expect("nonempty subset")
}

fn permute(p: &mut [usize], start: usize, visit: &mut dyn FnMut(&[usize])) {
    if start == p.len() {
        visit(p);
        return;
    }
    for i in start..p.len() {
        p.swap(start, i);
        permute(p, start + 1, visit);
        p.swap(start, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_family;

    fn fam(name: &str, params: &[usize]) -> Graph {
        make_family(name, params).unwrap()
    }

    fn assert_values(spec: &ParetoSpectrum, want: &[f64]) {
        assert_eq!(spec.len(), want.len(), "{:?}", spec.values);
        for (x, y) in spec.values.iter().zip(want) {
            assert!((x - y).abs() < 1e-9, "{:?} vs {want:?}", spec.values);
        }
    }

    #[test]
    fn path_three() {
        let s = pareto_spectrum(&fam("path", &[3])).unwrap();
        assert_values(&s, &[0.0, 1.0, 2.0, 1.0 + 3f64.sqrt()]);
        assert_eq!(
            s.witnesses,
            vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 1, 2]]
        );
    }

    #[test]
    fn complete_four() {
        let s = pareto_spectrum(&fam("complete", &[4])).unwrap();
        assert_values(&s, &[0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn star_four() {
        let s = pareto_spectrum(&fam("star", &[4])).unwrap();
        assert_values(
            &s,
            &[0.0, 1.0, 2.0, 1.0 + 3f64.sqrt(), 4.0, 2.0 + 7f64.sqrt()],
        );
        assert_eq!(s.witnesses[4], vec![1, 2, 3]);
    }

    #[test]
    fn path_counts() {
        for (n, want) in [(2, 2), (3, 4), (4, 7), (5, 13)] {
            assert_eq!(pareto_count(&fam("path", &[n])).unwrap(), want, "P{n}");
        }
        let g3 = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 1), (5, 2)]).unwrap();
        assert_eq!(pareto_count(&g3).unwrap(), 30);
    }

    #[test]
    fn ranks() {
        let s4 = fam("star", &[4]);
        assert!((rho_k(&s4, 1).unwrap() - (2.0 + 7f64.sqrt())).abs() < 1e-12);
        assert_eq!(mu_k(&s4, 1).unwrap(), 0.0);
        // Largest root of λ³ - 14λ - 12, i.e. ρ(D(P₄) minus vertex 1).
        let p4 = fam("path", &[4]);
        let r2 = rho_k(&p4, 2).unwrap();
        assert!((r2 * r2 * r2 - 14.0 * r2 - 12.0).abs() < 1e-9);
        assert!((r2 - 4.11309).abs() < 1e-4);
        assert!(matches!(
            rho_k(&p4, 8),
            Err(Error::RankOutOfRange { k: 8, len: 7 })
        ));
        assert!(mu_k(&p4, 0).is_err());
    }

    #[test]
    fn rho2_examples() {
        let r = rho2_fast(&fam("star", &[4])).unwrap();
        assert!((r.value - 4.0).abs() < 1e-12);
        assert_eq!(r.witness, 0);
        let r = rho2_fast(&fam("wheel", &[6])).unwrap();
        assert!((r.value - 6.0).abs() < 1e-12);
        let r = rho2_fast(&fam("complete", &[4])).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
        assert_eq!(r.witnesses, vec![0, 1, 2, 3]);
        let r = rho2_fast(&fam("path", &[2])).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(rho2_fast(&fam("path", &[1])).is_err());
    }

    #[test]
    fn eigenpairs() {
        let p = pareto_eigenpair(&fam("path", &[3]), &[0, 2]).unwrap();
        assert!((p.value - 2.0).abs() < 1e-12);
        let h = 0.5f64.sqrt();
        for (x, y) in p.vector.iter().zip([h, 0.0, h]) {
            assert!((x - y).abs() < 1e-12);
        }
        let p = pareto_eigenpair(&fam("complete", &[3]), &[0, 1, 2]).unwrap();
        assert!((p.value - 2.0).abs() < 1e-12);
        assert!(p.vector.iter().all(|x| (x - 3f64.powf(-0.5)).abs() < 1e-12));
        let p = pareto_eigenpair(&fam("path", &[4]), &[0, 2, 3]).unwrap();
        assert!((p.value - 4.11309).abs() < 1e-4);
        assert_eq!(p.vector[1], 0.0);
        assert!(p.vector.iter().enumerate().all(|(i, &x)| i == 1 || x > 0.0));
        assert!(matches!(
            pareto_eigenpair(&fam("path", &[3]), &[]),
            Err(Error::EmptySubset)
        ));
    }

    #[test]
    fn submatrix_classes() {
        assert_eq!(distinct_submatrix_count(&fam("complete", &[3])).unwrap(), 3);
        assert_eq!(distinct_submatrix_count(&fam("star", &[4])).unwrap(), 6);
        assert_eq!(distinct_submatrix_count(&fam("path", &[3])).unwrap(), 4);
        assert!(distinct_submatrix_count(&fam("path", &[9])).is_err());
    }

    #[test]
    fn witness_order() {
        assert_eq!(witness_cmp(0b001, 0b110), Ordering::Less);
        assert_eq!(witness_cmp(0b101, 0b110), Ordering::Less);
        assert_eq!(witness_cmp(0b110, 0b101), Ordering::Greater);
        assert_eq!(witness_cmp(0b1010, 0b0110), Ordering::Greater);
        assert_eq!(witness_cmp(0b11, 0b11), Ordering::Equal);
    }

    #[test]
    fn caps_and_disconnected() {
        let g = fam("path", &[21]);
        assert!(matches!(
            pareto_spectrum(&g),
            Err(Error::CapExceeded { .. })
        ));
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(
            pareto_spectrum(&g),
            Err(Error::Disconnected { .. })
        ));
    }
}
