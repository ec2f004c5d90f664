//! Closed-form values and bounds for the second largest distance Pareto
//! eigenvalue and the size of the spectrum.
//!
//! Every closed form is the larger root of a monic integer quadratic
//! `ρ² − bρ − c = 0`. It is evaluated from its surd form and the quadratic
//! residual is checked afterwards.

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{make_family, DistanceMatrix, Graph};
use crate::pareto::{self, ParetoSpectrum, Rho2};
use crate::spectral::{self, SymMatrix};

/// Slack below which a bound counts as attained.
pub const TIGHT_TOL: f64 = 1e-8;
const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    CompleteSpectrum,
    StarRadius,
    KnMinusERadius,
    Rho2KnMinusE,
    Rho2Kab,
    Rho2KPendant,
    Rho2TwoNonincident,
}

impl Formula {
    pub const ALL: [Formula; 7] = [
        Formula::CompleteSpectrum,
        Formula::StarRadius,
        Formula::KnMinusERadius,
        Formula::Rho2KnMinusE,
        Formula::Rho2Kab,
        Formula::Rho2KPendant,
        Formula::Rho2TwoNonincident,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Formula::CompleteSpectrum => "complete_spectrum",
            Formula::StarRadius => "star_radius",
            Formula::KnMinusERadius => "kn_minus_e_radius",
            Formula::Rho2KnMinusE => "rho2_kn_minus_e",
            Formula::Rho2Kab => "rho2_kab",
            Formula::Rho2KPendant => "rho2_k_pendant",
            Formula::Rho2TwoNonincident => "rho2_two_nonincident",
        }
    }

    /// Number of integer parameters.
    pub fn arity(self) -> usize {
        match self {
            Formula::Rho2Kab => 2,
            _ => 1,
        }
    }

    fn validate(self, params: &[usize]) -> Result<()> {
        if params.len() != self.arity() {
            return Err(Error::InvalidParams(format!(
                "{} takes {} parameter(s), got {}",
                self.as_str(),
                self.arity(),
                params.len()
            )));
        }
        let n = params[0];
        let min = match self {
            Formula::CompleteSpectrum => 1,
            Formula::StarRadius => 2,
            Formula::KnMinusERadius | Formula::Rho2KnMinusE | Formula::Rho2KPendant => 3,
            // The extremal graph only has both ρ₂ candidates from n = 5 on;
            // at n = 4 it is C₄ and the formula overshoots.
            Formula::Rho2TwoNonincident => 5,
            Formula::Rho2Kab => {
                let b = params[1];
                if n < 1 || n > b {
                    return Err(Error::InvalidParams(format!(
                        "rho2_kab needs 1 <= a <= b, got a={n}, b={b}"
                    )));
                }
                return Ok(());
            }
        };
        if n < min {
            return Err(Error::InvalidParams(format!(
                "{} needs n >= {min}, got {n}",
                self.as_str()
            )));
        }
        Ok(())
    }

    /// The quadratic `ρ² − bρ − c` whose larger root is the value.
    fn quadratic(self, params: &[usize]) -> Option<Quadratic> {
        let n = params[0] as i64;
        let (b, c) = match self {
            Formula::CompleteSpectrum => return None,
            Formula::StarRadius => (2 * (n - 2), n - 1),
            Formula::KnMinusERadius => (n - 1, 2),
            Formula::Rho2KnMinusE => (n - 2, 2),
            Formula::Rho2KPendant => (n - 3, 4 * (n - 2)),
            Formula::Rho2TwoNonincident => (n - 2, 4),
            Formula::Rho2Kab => {
                let (a, b) = (n, params[1] as i64);
                let s = a + b - 3;
                let r = a * a + b * b + b - a * b - 2 * a + 1;
                (2 * s, r - s * s)
            }
        };
        Some(Quadratic { b, c })
    }

    /// Graph on which the formula is attained.
    pub fn instance(self, params: &[usize]) -> Result<Graph> {
        self.validate(params)?;
        let n = params[0];
        match self {
            Formula::CompleteSpectrum => make_family("complete", &[n]),
            Formula::StarRadius => make_family("star", &[n]),
            Formula::KnMinusERadius | Formula::Rho2KnMinusE => {
                make_family("complete_minus_edge", &[n])
            }
            Formula::Rho2Kab => make_family("complete_bipartite", params),
            Formula::Rho2KPendant => make_family("clique_plus_pendant_p", &[n - 1, 1]),
            Formula::Rho2TwoNonincident => {
                make_family("complete_minus_two_nonincident_edges", &[n])
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Formula::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy)]
struct Quadratic {
    b: i64,
    c: i64,
}

impl Quadratic {
    fn discriminant(self) -> i64 {
        self.b * self.b + 4 * self.c
    }

    fn larger_root(self) -> f64 {
        (self.b as f64 + (self.discriminant() as f64).sqrt()) / 2.0
    }

    fn residual(self, x: f64) -> f64 {
        x * x - self.b as f64 * x - self.c as f64
    }

    /// Exact form of the larger root, e.g. `2+sqrt(7)` or `(3+sqrt(17))/2`.
    fn surd(self) -> String {
        let disc = self.discriminant();
        let (k, m) = square_split(disc);
        if m == 1 {
            return rational(self.b + k, 2);
        }
        let radical = |coef: i64| {
            if coef == 1 {
                format!("sqrt({m})")
            } else {
                format!("{coef}*sqrt({m})")
            }
        };
        if self.b % 2 == 0 && k % 2 == 0 {
            let p = self.b / 2;
            if p == 0 {
                radical(k / 2)
            } else {
                format!("{p}+{}", radical(k / 2))
            }
        } else if self.b == 0 {
            format!("{}/2", radical(k))
        } else {
            format!("({}+{})/2", self.b, radical(k))
        }
    }
}

/// Writes `d = k²·m` with `m` squarefree.
fn square_split(d: i64) -> (i64, i64) {
    let (mut k, mut m) = (1, d);
    let mut f = 2;
    while f * f <= m {
        while m % (f * f) == 0 {
            m /= f * f;
            k *= f;
        }
        f += 1;
    }
    (k, m)
}

fn rational(p: i64, q: i64) -> String {
    if p % q == 0 {
        (p / q).to_string()
    } else {
        format!("{p}/{q}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedForm {
    pub formula: &'static str,
    pub params: Vec<usize>,
    pub values: Vec<f64>,
    pub exact: Vec<String>,
}

/// Evaluates a named closed form.
pub fn closed_form(name: &str, params: &[usize]) -> Result<ClosedForm> {
    let formula: Formula = name.parse()?;
    formula.validate(params)?;
    let (values, exact) = match formula.quadratic(params) {
        None => {
            let n = params[0];
            (
                (0..n).map(|k| k as f64).collect(),
                (0..n).map(|k| k.to_string()).collect(),
            )
        }
        Some(q) => {
            let x = q.larger_root();
            if q.residual(x).abs() > RESIDUAL_TOL * x.abs().max(1.0).powi(2) {
                return Err(Error::Numerical(format!(
                    "{name}{params:?}: quadratic residual {:e}",
                    q.residual(x)
                )));
            }
            (vec![x], vec![q.surd()])
        }
    };
    Ok(ClosedForm {
        formula: formula.as_str(),
        params: params.to_vec(),
        values,
        exact,
    })
}

/// The same quantity computed by exhaustive enumeration on the formula's
/// extremal graph.
pub fn brute_force(name: &str, params: &[usize]) -> Result<Vec<f64>> {
    let formula: Formula = name.parse()?;
    let g = formula.instance(params)?;
    let spec = pareto::pareto_spectrum(&g)?;
    Ok(match formula {
        Formula::CompleteSpectrum => spec.values,
        Formula::StarRadius | Formula::KnMinusERadius => vec![spec.rho(1)?],
        _ => vec![spec.rho(2)?],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundId {
    RhoKLower,
    CountLower,
    Rho2DominatingUpper,
    Rho2DominatingLower,
    Rho2Diam2Upper,
    Rho2NoncompleteLower,
    Rho2SimpleLower,
    Rho2WienerLower,
    Rho2TwoEdgesLower,
    Rho2VsLambda2,
    Rho2BipartiteLower,
    Rho2TminLower,
    Rho2SecondComponentUpper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lower,
    Upper,
}

impl BoundId {
    pub const ALL: [BoundId; 13] = [
        BoundId::RhoKLower,
        BoundId::CountLower,
        BoundId::Rho2DominatingUpper,
        BoundId::Rho2DominatingLower,
        BoundId::Rho2Diam2Upper,
        BoundId::Rho2NoncompleteLower,
        BoundId::Rho2SimpleLower,
        BoundId::Rho2WienerLower,
        BoundId::Rho2TwoEdgesLower,
        BoundId::Rho2VsLambda2,
        BoundId::Rho2BipartiteLower,
        BoundId::Rho2TminLower,
        BoundId::Rho2SecondComponentUpper,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::RhoKLower => "rho_k_lower",
            BoundId::CountLower => "count_lower",
            BoundId::Rho2DominatingUpper => "rho2_dominating_upper",
            BoundId::Rho2DominatingLower => "rho2_dominating_lower",
            BoundId::Rho2Diam2Upper => "rho2_diam2_upper",
            BoundId::Rho2NoncompleteLower => "rho2_noncomplete_lower",
            BoundId::Rho2SimpleLower => "rho2_simple_lower",
            BoundId::Rho2WienerLower => "rho2_wiener_lower",
            BoundId::Rho2TwoEdgesLower => "rho2_two_edges_lower",
            BoundId::Rho2VsLambda2 => "rho2_vs_lambda2",
            BoundId::Rho2BipartiteLower => "rho2_bipartite_lower",
            BoundId::Rho2TminLower => "rho2_tmin_lower",
            BoundId::Rho2SecondComponentUpper => "rho2_second_component_upper",
        }
    }

    pub fn direction(self) -> Direction {
        match self {
            BoundId::Rho2DominatingUpper
            | BoundId::Rho2Diam2Upper
            | BoundId::Rho2SecondComponentUpper => Direction::Upper,
            _ => Direction::Lower,
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundId::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown bound `{s}`")))
    }
}

impl Serialize for BoundId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundResult {
    pub bound_id: BoundId,
    /// `k` for `rho_k_lower`.
    pub index: Option<usize>,
    pub direction: Direction,
    pub bound_value: Option<f64>,
    pub actual_value: Option<f64>,
    /// `actual − bound` for lower bounds, `bound − actual` for upper.
    pub slack: Option<f64>,
    pub tight: bool,
    pub applicable: bool,
    pub reason: Option<String>,
    pub detail: Option<String>,
}

impl BoundResult {
    fn evaluated(id: BoundId, bound: f64, actual: f64) -> Self {
        let direction = id.direction();
        let slack = match direction {
            Direction::Lower => actual - bound,
            Direction::Upper => bound - actual,
        };
        BoundResult {
            bound_id: id,
            index: None,
            direction,
            bound_value: Some(bound),
            actual_value: Some(actual),
            slack: Some(slack),
            tight: slack.abs() <= TIGHT_TOL,
            applicable: true,
            reason: None,
            detail: None,
        }
    }

    fn inapplicable(id: BoundId, reason: impl Into<String>) -> Self {
        BoundResult {
            bound_id: id,
            index: None,
            direction: id.direction(),
            bound_value: None,
            actual_value: None,
            slack: None,
            tight: false,
            applicable: false,
            reason: Some(reason.into()),
            detail: None,
        }
    }

    /// An applicable bound whose slack is below `-TIGHT_TOL`.
    pub fn violated(&self) -> bool {
        self.applicable && self.slack.is_some_and(|s| s < -TIGHT_TOL)
    }
}

/// Quantities shared by the bounds of one graph, computed on first use.
pub struct BoundContext<'g> {
    g: &'g Graph,
    dm: DistanceMatrix,
    spectrum: OnceCell<Option<ParetoSpectrum>>,
    rho2: OnceCell<Rho2>,
    lambda2: OnceCell<f64>,
}

impl<'g> BoundContext<'g> {
    pub fn new(g: &'g Graph) -> Result<Self> {
        Ok(BoundContext {
            g,
            dm: g.distance_matrix()?,
            spectrum: OnceCell::new(),
            rho2: OnceCell::new(),
            lambda2: OnceCell::new(),
        })
    }

    pub fn distance_matrix(&self) -> &DistanceMatrix {
        &self.dm
    }

    fn spectrum(&self) -> Option<&ParetoSpectrum> {
        self.spectrum
            .get_or_init(|| {
                pareto::spectrum_of_distance(&self.dm, &pareto::SpectrumOptions::default()).ok()
            })
            .as_ref()
    }

    /// Requires order at least 2.
    pub fn rho2(&self) -> &Rho2 {
        self.rho2
            .get_or_init(|| pareto::rho2_of(self.g, &self.dm).expect("order >= 2"))
    }

    /// Second largest ordinary eigenvalue of `D(G)`; requires order at least 2.
    pub fn lambda2(&self) -> f64 {
        *self.lambda2.get_or_init(|| {
            let spec = spectral::full_spectrum(&SymMatrix::from_distance(&self.dm))
                .expect("distance matrix is symmetric");
            spec[spec.len() - 2]
        })
    }

    pub fn evaluate(&self, id: BoundId) -> Vec<BoundResult> {
        let g = self.g;
        let n = g.order();
        let nf = n as f64;
        let one = |r: BoundResult| vec![r];
        match id {
            BoundId::RhoKLower => match self.spectrum() {
                None => one(BoundResult::inapplicable(
                    id,
                    "order exceeds enumeration cap",
                )),
                Some(spec) => (1..=n.min(spec.len()))
                    .map(|k| {
                        let mut r =
                            BoundResult::evaluated(id, (n - k) as f64, spec.rho(k).unwrap());
                        r.index = Some(k);
                        r
                    })
                    .collect(),
            },
            BoundId::CountLower => match self.spectrum() {
                None => one(BoundResult::inapplicable(
                    id,
                    "order exceeds enumeration cap",
                )),
                Some(spec) => {
                    let d = self.dm.diameter() as usize;
                    one(BoundResult::evaluated(
                        id,
                        (n + d).saturating_sub(1) as f64,
                        spec.len() as f64,
                    ))
                }
            },
            _ if n < 2 => one(BoundResult::inapplicable(id, "order below 2")),
            BoundId::Rho2DominatingUpper | BoundId::Rho2DominatingLower => {
                if !(0..n).any(|v| g.degree(v) == n - 1) {
                    return one(BoundResult::inapplicable(id, "no vertex of degree n-1"));
                }
                let bound = if id == BoundId::Rho2DominatingUpper {
                    2.0 * (nf - 2.0)
                } else {
                    nf - 2.0
                };
                one(BoundResult::evaluated(id, bound, self.rho2().value))
            }
            BoundId::Rho2Diam2Upper => {
                if self.dm.diameter() != 2 {
                    return one(BoundResult::inapplicable(id, "diameter is not 2"));
                }
                one(BoundResult::evaluated(
                    id,
                    2.0 * (nf - 2.0),
                    self.rho2().value,
                ))
            }
            BoundId::Rho2NoncompleteLower | BoundId::Rho2SimpleLower => {
                if g.is_complete() {
                    return one(BoundResult::inapplicable(id, "graph is complete"));
                }
                let bound = if id == BoundId::Rho2NoncompleteLower {
                    (nf - 2.0 + (nf * nf - 4.0 * nf + 12.0).sqrt()) / 2.0
                } else {
                    nf - 2.0 + 2.0 / (nf - 1.0)
                };
                one(BoundResult::evaluated(id, bound, self.rho2().value))
            }
            BoundId::Rho2WienerLower => {
                let t = self.dm.transmissions();
                let (v, tmin) = t
                    .iter()
                    .enumerate()
                    .min_by_key(|&(_, &x)| x)
                    .map(|(v, &x)| (v, x))
                    .unwrap();
                let bound = 2.0 * (self.dm.wiener() - tmin) as f64 / (nf - 1.0);
                let mut r = BoundResult::evaluated(id, bound, self.rho2().value);
                r.detail = Some(format!("minimum transmission {tmin} at vertex {v}"));
                one(r)
            }
            BoundId::Rho2TwoEdgesLower => {
                let full = n * (n - 1) / 2;
                if g.size() + 1 >= full {
                    let which = if g.size() == full { "K_n" } else { "K_n-e" };
                    return one(BoundResult::inapplicable(id, format!("graph is {which}")));
                }
                let bound = (nf - 2.0 + (nf * nf - 4.0 * nf + 20.0).sqrt()) / 2.0;
                one(BoundResult::evaluated(id, bound, self.rho2().value))
            }
            BoundId::Rho2VsLambda2 => one(BoundResult::evaluated(
                id,
                self.lambda2(),
                self.rho2().value,
            )),
            BoundId::Rho2BipartiteLower => {
                if g.bipartition().is_none() {
                    return one(BoundResult::inapplicable(id, "graph is not bipartite"));
                }
                let f = (n / 2) as f64;
                let bound = nf - 3.0 + (nf * nf + nf + 1.0 + 3.0 * f * (f - nf - 1.0)).sqrt();
                one(BoundResult::evaluated(id, bound, self.rho2().value))
            }
            BoundId::Rho2TminLower => {
                let t = *self.dm.transmissions().iter().min().unwrap() as f64;
                let d = self.dm.diameter() as f64;
                let s = t - 2.0 * d;
                let bound = (s + (s * s + 4.0 * (nf - d - 1.0)).sqrt()) / 2.0;
                one(BoundResult::evaluated(id, bound, self.rho2().value))
            }
            BoundId::Rho2SecondComponentUpper => one(self.second_component()),
        }
    }

    /// Upper bound from the transmission of the vertex carrying the second
    /// largest entry of the ρ₂ eigenvector. Tied entries are all tried and
    /// the smallest bound is kept.
    fn second_component(&self) -> BoundResult {
        let id = BoundId::Rho2SecondComponentUpper;
        let n = self.g.order();
        let nf = n as f64;
        let rho2 = self.rho2();
        let support: Vec<usize> = (0..n).filter(|&v| v != rho2.witness).collect();
        let x = match pareto::pareto_eigenpair_in(&self.dm, &support) {
            Ok(p) => p.vector,
            Err(e) => return BoundResult::inapplicable(id, format!("eigenvector failed: {e}")),
        };
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| x[b].total_cmp(&x[a]).then(a.cmp(&b)));
        let top = order[0];
        let second = x[order[1]];
        let t = self.dm.transmissions();
        let (j, bound) = order[1..]
            .iter()
            .filter(|&&k| (x[k] - second).abs() <= pareto::TIE_TOLERANCE)
            .map(|&k| {
                let s = t[k] as f64 - 2.0;
                (k, (s + (s * s + 4.0 * (nf - 2.0)).sqrt()) / 2.0)
            })
            .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
            .unwrap();
        let mut r = BoundResult::evaluated(id, bound, rho2.value);
        let mut detail = format!(
            "zero entry at {}, largest at {top}, second largest at {j} (Tr = {})",
            rho2.witness, t[j]
        );
        if r.tight {
            detail.push_str(&format!("; H_uv shape: {}", h_uv_shape(self.g, &self.dm)));
        }
        r.detail = Some(detail);
        r
    }
}

/// Whether some `u` has degree `n − 1` and some `v` leaves every other
/// vertex with one common degree and one common transmission.
pub fn h_uv_shape(g: &Graph, dm: &DistanceMatrix) -> bool {
    let n = g.order();
    let t = dm.transmissions();
    (0..n).filter(|&u| g.degree(u) + 1 == n).any(|u| {
        (0..n).filter(|&v| v != u).any(|v| {
            let mut rest = (0..n).filter(|&w| w != u && w != v);
            match rest.next() {
                None => true,
                Some(w0) => rest.all(|w| g.degree(w) == g.degree(w0) && t[w] == t[w0]),
            }
        })
    })
}

pub fn evaluate_bound(id: BoundId, g: &Graph) -> Result<Vec<BoundResult>> {
    Ok(BoundContext::new(g)?.evaluate(id))
}

/// Every bound on `g`, in [`BoundId::ALL`] order.
pub fn bound_report(g: &Graph) -> Result<Vec<BoundResult>> {
    let ctx = BoundContext::new(g)?;
    Ok(BoundId::ALL
        .iter()
        .flat_map(|&id| ctx.evaluate(id))
        .collect())
}
