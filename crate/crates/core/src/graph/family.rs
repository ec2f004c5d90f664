use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

/// Named graph families with fixed labelings:
///
/// | family | params | labeling |
/// |---|---|---|
/// | `path` | `n` | `0-1-...-(n-1)` |
/// | `cycle` | `n >= 3` | path plus `{0, n-1}` |
/// | `complete` | `n` | all pairs |
/// | `star` | `n` | center `0`, leaves `1..n` |
/// | `complete_bipartite` | `a, b` | parts `0..a` and `a..a+b` |
/// | `complete_minus_edge` | `n >= 2` | `K_n` minus `{0,1}` |
/// | `complete_minus_two_nonincident_edges` | `n >= 4` | minus `{0,1}`, `{2,3}` |
/// | `complete_minus_two_incident_edges` | `n >= 3` | minus `{0,1}`, `{0,2}` |
/// | `clique_plus_pendant_p` | `w, p` | `K_w` on `0..w`, vertex `w` joined to `0..p` |
/// | `star_plus_edge` | `n >= 3` | star plus `{1,2}` |
/// | `wheel` | `n >= 4` | hub `0`, rim cycle `1-2-...-(n-1)-1` |
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Star,
    CompleteBipartite,
    CompleteMinusEdge,
    CompleteMinusTwoNonincidentEdges,
    CompleteMinusTwoIncidentEdges,
    CliquePlusPendantP,
    StarPlusEdge,
    Wheel,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Path,
        Family::Cycle,
        Family::Complete,
        Family::Star,
        Family::CompleteBipartite,
        Family::CompleteMinusEdge,
        Family::CompleteMinusTwoNonincidentEdges,
        Family::CompleteMinusTwoIncidentEdges,
        Family::CliquePlusPendantP,
        Family::StarPlusEdge,
        Family::Wheel,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Star => "star",
            Family::CompleteBipartite => "complete_bipartite",
            Family::CompleteMinusEdge => "complete_minus_edge",
            Family::CompleteMinusTwoNonincidentEdges => "complete_minus_two_nonincident_edges",
            Family::CompleteMinusTwoIncidentEdges => "complete_minus_two_incident_edges",
            Family::CliquePlusPendantP => "clique_plus_pendant_p",
            Family::StarPlusEdge => "star_plus_edge",
            Family::Wheel => "wheel",
        }
    }

    fn arity(self) -> usize {
        match self {
            Family::CompleteBipartite | Family::CliquePlusPendantP => 2,
            _ => 1,
        }
    }

    pub fn build(self, params: &[usize]) -> Result<Graph> {
        if params.len() != self.arity() {
            return Err(Error::InvalidParams(format!(
                "{} takes {} parameter(s), got {}",
                self.as_str(),
                self.arity(),
                params.len()
            )));
        }
        let bad = |why: &str| Err(Error::InvalidParams(format!("{}: {why}", self.as_str())));
        let n = params[0];
        let edges: Vec<(usize, usize)> = match self {
            Family::Path => {
                if n < 1 {
                    return bad("n >= 1 required");
                }
                (1..n).map(|i| (i - 1, i)).collect()
            }
            Family::Cycle => {
                if n < 3 {
                    return bad("n >= 3 required");
                }
                (1..n).map(|i| (i - 1, i)).chain([(0, n - 1)]).collect()
            }
            Family::Complete => {
                if n < 1 {
                    return bad("n >= 1 required");
                }
                complete_edges(n).collect()
            }
            Family::Star => {
                if n < 1 {
                    return bad("n >= 1 required");
                }
                (1..n).map(|i| (0, i)).collect()
            }
            Family::CompleteBipartite => {
                let (a, b) = (params[0], params[1]);
                if a < 1 || b < 1 {
                    return bad("both parts must be nonempty");
                }
                (0..a)
                    .flat_map(|i| (a..a + b).map(move |j| (i, j)))
                    .collect()
            }
            Family::CompleteMinusEdge => {
                if n < 2 {
                    return bad("n >= 2 required");
                }
                complete_edges(n).filter(|&e| e != (0, 1)).collect()
            }
            Family::CompleteMinusTwoNonincidentEdges => {
                if n < 4 {
                    return bad("n >= 4 required");
                }
                complete_edges(n)
                    .filter(|&e| e != (0, 1) && e != (2, 3))
                    .collect()
            }
            Family::CompleteMinusTwoIncidentEdges => {
                if n < 3 {
                    return bad("n >= 3 required");
                }
                complete_edges(n)
                    .filter(|&e| e != (0, 1) && e != (0, 2))
                    .collect()
            }
            Family::CliquePlusPendantP => {
                let (w, p) = (params[0], params[1]);
                if w < 1 || p < 1 || p > w {
                    return bad("1 <= p <= w required");
                }
                complete_edges(w).chain((0..p).map(|i| (i, w))).collect()
            }
            Family::StarPlusEdge => {
                if n < 3 {
                    return bad("n >= 3 required");
                }
                (1..n).map(|i| (0, i)).chain([(1, 2)]).collect()
            }
            Family::Wheel => {
                if n < 4 {
                    return bad("n >= 4 required");
                }
                let rim = n - 1;
                (1..n)
                    .map(|i| (0, i))
                    .chain((1..rim).map(|i| (i, i + 1)))
                    .chain([(1, rim)])
                    .collect()
            }
        };
        let order = match self {
            Family::CompleteBipartite => params[0] + params[1],
            Family::CliquePlusPendantP => params[0] + 1,
            _ => n,
        };
        let label = params
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",");
        Ok(Graph::new(order, edges)?.with_name(format!("{}({label})", self.as_str())))
    }
}

fn complete_edges(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Builds a named family member, e.g. `make_family("star", &[5])`.
pub fn make_family(name: &str, params: &[usize]) -> Result<Graph> {
    name.parse::<Family>()?.build(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_four() {
        let g = make_family("complete", &[4]).unwrap();
        assert_eq!(g.size(), 6);
    }

    #[test]
    fn clique_plus_pendant() {
        let g = make_family("clique_plus_pendant_p", &[3, 1]).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.neighbors(3), &[0]);
        assert_eq!(g.size(), 4);
        assert!(make_family("clique_plus_pendant_p", &[3, 4]).is_err());
        assert!(make_family("clique_plus_pendant_p", &[3, 0]).is_err());
    }

    #[test]
    fn minus_two_nonincident() {
        let g = make_family("complete_minus_two_nonincident_edges", &[5]).unwrap();
        assert_eq!(g.size(), 8);
        assert!(!g.has_edge(0, 1));
        assert!(!g.has_edge(2, 3));
        assert!(g.has_edge(0, 2));
    }

    #[test]
    fn wheel_six() {
        let g = make_family("wheel", &[6]).unwrap();
        assert_eq!(g.degree(0), 5);
        assert!((1..6).all(|v| g.degree(v) == 3));
        assert_eq!(g.size(), 10);
    }

    #[test]
    fn unknown_and_bad_params() {
        assert!(matches!(
            make_family("petersen", &[10]),
            Err(Error::UnknownFamily(_))
        ));
        assert!(matches!(
            make_family("cycle", &[2]),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            make_family("path", &[2, 3]),
            Err(Error::InvalidParams(_))
        ));
    }
}
