//! Simple undirected graphs, their distance matrices and the combinatorial
//! metrics consumed by the spectral code.
//!
//! Vertices are labeled `0..n`. Graphs are immutable after construction;
//! every editing operation returns a new graph.

mod canon;
mod enumerate;
mod family;
mod io;

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub use canon::{canonical_form, is_isomorphic, CanonicalForm, CANON_MAX_ORDER};
pub use enumerate::{connected_graphs, connected_labeled_masks, graph_from_mask, ENUM_MAX_ORDER};
pub use family::{make_family, Family};
pub use io::{parse_edge_list, parse_graph6, read_graph6, to_edge_list, to_graph6};

/// Default order limit for [`clique_number`].
pub const CLIQUE_MAX_ORDER: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Graph {
    #[serde(rename = "order")]
    n: usize,
    /// Sorted, each pair stored as `(u, v)` with `u < v`.
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adj: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

impl Graph {
    /// Builds a graph, collapsing duplicate edges. Self-loops and
    /// out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(Error::InvalidParams(format!("self-loop at vertex {u}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            adj,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_complete(&self) -> bool {
        self.size() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Adjacency rows as bitmasks; requires `n <= 64`.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        debug_assert!(self.n <= 64);
        self.adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect()
    }

    /// Connected-component id per vertex, numbered in order of first vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().iter().all(|&c| c == 0)
    }

    /// Two vertices in different components, if any.
    fn disconnection_witness(&self) -> Option<(usize, usize)> {
        let comp = self.components();
        comp.iter().position(|&c| c != 0).map(|b| (0, b))
    }

    /// `G - e`. The result may be disconnected.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge(u, v));
        }
        let key = (u.min(v), u.max(v));
        Graph::new(self.n, self.edges.iter().copied().filter(|&e| e != key))
    }

    /// `G - v`. Vertices above `v` shift down by one; the result may be
    /// disconnected.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        let relabel = |x: usize| if x > v { x - 1 } else { x };
        Graph::new(
            self.n - 1,
            self.edges
                .iter()
                .filter(|&&(a, b)| a != v && b != v)
                .map(|&(a, b)| (relabel(a), relabel(b))),
        )
    }

    /// Coalescence `G_u * H_w`: identifies `u` in `self` with `w` in `h`.
    ///
    /// `self` keeps its labels. The vertices of `h` other than `w` take the
    /// labels `n_g, n_g + 1, ...` in increasing order of their label in `h`.
    pub fn coalesce(&self, u: usize, h: &Graph, w: usize) -> Result<Graph> {
        if u >= self.n {
            return Err(Error::VertexOutOfRange { v: u, n: self.n });
        }
        if w >= h.n {
            return Err(Error::VertexOutOfRange { v: w, n: h.n });
        }
        let map = coalesce_map(self.n, u, h.n, w);
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(h.edges.iter().map(|&(a, b)| (map[a], map[b])));
        Graph::new(self.n + h.n - 1, edges)
    }

    pub fn distance_matrix(&self) -> Result<DistanceMatrix> {
        DistanceMatrix::new(self)
    }

    /// Vertices of degree one.
    pub fn pendant_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.size() == self.n - 1 && self.is_connected()
    }

    /// Two-coloring of a bipartite graph as `(part of 0, other part)`.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if color[y] == u8::MAX {
                        color[y] = 1 - color[x];
                        queue.push_back(y);
                    } else if color[y] == color[x] {
                        return None;
                    }
                }
            }
        }
        let (a, b): (Vec<usize>, Vec<usize>) = (0..self.n).partition(|&v| color[v] == 0);
        Some((a, b))
    }

    /// Random connected graph: a uniform random labeled spanning tree (via
    /// a random Prüfer sequence) plus every other pair independently with
    /// probability `p`.
    pub fn random_connected<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
        let mut edges = Vec::new();
        if n >= 2 {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            edges = prufer_decode(&seq, n);
        }
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(n, edges).expect("generated edges are valid")
    }
}

/// Label map used by [`Graph::coalesce`] for the vertices of the second graph.
pub(crate) fn coalesce_map(n_g: usize, u: usize, n_h: usize, w: usize) -> Vec<usize> {
    let mut next = n_g;
    (0..n_h)
        .map(|x| {
            if x == w {
                u
            } else {
                next += 1;
                next - 1
            }
        })
        .collect()
}

/// Edges of the labeled tree on `n >= 2` vertices with Prüfer sequence `seq`.
pub fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    debug_assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    // Smallest leaf; linear-time variant.
    let mut ptr = degree.iter().position(|&d| d == 1).unwrap();
    let mut leaf = ptr;
    for &s in seq {
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 && s < ptr {
            leaf = s;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    edges
}

/// Hop distances of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    /// All-pairs BFS.
    pub fn new(g: &Graph) -> Result<Self> {
        if let Some((a, b)) = g.disconnection_witness() {
            return Err(Error::Disconnected { a, b });
        }
        let n = g.order();
        let mut d = vec![u32::MAX; n * n];
        let mut queue = VecDeque::with_capacity(n);
        for s in 0..n {
            let row = &mut d[s * n..(s + 1) * n];
            row[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in g.neighbors(u) {
                    if row[w] == u32::MAX {
                        row[w] = row[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        Ok(DistanceMatrix { n, d })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.d[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.d[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// `Tr(v)`, the row sum of `v`.
    pub fn transmission(&self, v: usize) -> u64 {
        self.row(v).iter().map(|&x| x as u64).sum()
    }

    pub fn transmissions(&self) -> Vec<u64> {
        (0..self.n).map(|v| self.transmission(v)).collect()
    }

    /// Wiener index: half the sum of all entries.
    pub fn wiener(&self) -> u64 {
        self.d.iter().map(|&x| x as u64).sum::<u64>() / 2
    }

    pub fn diameter(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }
}

/// Degree-based and bipartiteness facts about a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Structure {
    pub degrees: Vec<usize>,
    pub pendants: Vec<usize>,
    pub quasipendants: Vec<usize>,
    pub is_tree: bool,
    pub is_bipartite: bool,
    pub parts: Option<(Vec<usize>, Vec<usize>)>,
    pub is_connected: bool,
}

pub fn structure_queries(g: &Graph) -> Structure {
    let degrees: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    let pendants = g.pendant_vertices();
    let quasipendants: BTreeSet<usize> = pendants
        .iter()
        .flat_map(|&p| g.neighbors(p).iter().copied())
        .collect();
    let parts = g.bipartition();
    Structure {
        degrees,
        pendants,
        quasipendants: quasipendants.into_iter().collect(),
        is_tree: g.is_tree(),
        is_bipartite: parts.is_some(),
        parts,
        is_connected: g.is_connected(),
    }
}

/// Clique number by branch and bound, for graphs up to [`CLIQUE_MAX_ORDER`].
pub fn clique_number(g: &Graph) -> Result<usize> {
    clique_number_with_limit(g, CLIQUE_MAX_ORDER)
}

pub fn clique_number_with_limit(g: &Graph, limit: usize) -> Result<usize> {
    let limit = limit.min(64);
    if g.order() > limit {
        return Err(Error::CapExceeded {
            what: "clique number",
            got: g.order(),
            limit,
        });
    }
    let adj = g.adjacency_masks();
    let all = if g.order() == 64 {
        u64::MAX
    } else {
        (1u64 << g.order()) - 1
    };
    let mut best = 0;
    expand_clique(&adj, 0, all, &mut best);
    Ok(best)
}

fn expand_clique(adj: &[u64], size: usize, mut cand: u64, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    while cand != 0 {
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        expand_clique(adj, size + 1, cand & adj[v], best);
    }
}
