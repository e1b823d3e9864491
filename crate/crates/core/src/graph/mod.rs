//! Simple undirected graphs on at most [`MAX_VERTICES`] vertices.
//!
//! Adjacency is stored as one `u64` bitmask per vertex, which keeps the hot
//! loops of subgraph search, canonical labeling and enumeration branch-free.

mod canon;
mod enumerate;
mod named;
mod subgraph;

pub use canon::{canonical_form, canonical_labeling, is_isomorphic, CanonicalForm, Labeling};
pub use enumerate::{enumerate_graphs, find_graph, EnumConstraints, DEFAULT_ENUM_CEILING};
pub use named::{make_named, registry, NamedGraph, NamedRegistry, TannerPattern};
pub use subgraph::{contains_subgraph, find_embedding, find_embedding_through};

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported order.
pub const MAX_VERTICES: usize = 64;

/// An undirected simple graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::ResourceCeiling(format!(
                "graphs are limited to {MAX_VERTICES} vertices, got {n}"
            )));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn from_adjacency(adj: Vec<u64>) -> Self {
        Graph { n: adj.len(), adj }
    }

    /// Adds `uv`. Loops are rejected; re-adding an existing edge is an error
    /// because it would silently turn a multigraph description into a simple one.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Parameter(format!("loop at vertex {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::Parameter(format!("duplicate edge {u}-{v}")));
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
        Ok(())
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        iter_bits(self.adj[v])
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in iter_bits(self.adj[u] & !((bit(u) << 1).wrapping_sub(1))) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        degrees.sort_unstable();
        DegreeSequence { degrees }
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub(crate) fn vertex_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            bit(self.n) - 1
        }
    }

    /// Breadth-first distances from `src`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut frontier = bit(src);
        let mut seen = frontier;
        let mut d = 0;
        while frontier != 0 {
            let mut next = 0u64;
            for v in iter_bits(frontier) {
                dist[v] = Some(d);
                next |= self.adj[v];
            }
            next &= !seen;
            seen |= next;
            frontier = next;
            d += 1;
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            for v in iter_bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == self.vertex_mask()
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut parent = vec![usize::MAX; self.n];
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] + 1 >= b {
                        break;
                    }
                }
                for w in self.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Eccentricity maximum; errors on disconnected input.
    pub fn diameter(&self) -> Result<usize> {
        Ok(self.distance_profile()?.diameter())
    }

    pub fn distance_profile(&self) -> Result<DistanceProfile> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut counts: Vec<usize> = Vec::new();
        for u in 0..self.n {
            for d in self.bfs_distances(u).into_iter().skip(u + 1) {
                let d = d.expect("connected graph");
                if counts.len() < d {
                    counts.resize(d, 0);
                }
                counts[d - 1] += 1;
            }
        }
        Ok(DistanceProfile { counts })
    }

    /// `G ∨ H`: disjoint union plus every edge between the two parts.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        for u in 0..self.n {
            for v in 0..other.n {
                g.add_edge(u, self.n + v)?;
            }
        }
        Ok(g)
    }

    /// `G + H`; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let mut g = Graph::empty(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v)?;
        }
        for (u, v) in other.edges() {
            g.add_edge(self.n + u, self.n + v)?;
        }
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertex_mask();
        let adj = (0..self.n).map(|v| !self.adj[v] & full & !bit(v)).collect();
        Graph { n: self.n, adj }
    }

    /// `G - v`; vertices above `v` shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        Ok(self.induced(&keep))
    }

    /// Induced subgraph; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let k = vertices.len();
        let mut adj = vec![0u64; k];
        for i in 0..k {
            for j in (i + 1)..k {
                if self.has_edge(vertices[i], vertices[j]) {
                    adj[i] |= bit(j);
                    adj[j] |= bit(i);
                }
            }
        }
        Graph { n: k, adj }
    }

    /// Applies `perm` (old vertex -> new vertex).
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::Parameter("permutation length mismatch".into()));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen & bit(p) != 0 {
                return Err(Error::Parameter("not a permutation".into()));
            }
            seen |= bit(p);
        }
        Ok(self.permuted(perm))
    }

    pub(crate) fn permuted(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            let mut row = 0;
            for w in iter_bits(self.adj[u]) {
                row |= bit(perm[w]);
            }
            adj[perm[u]] = row;
        }
        Graph { n: self.n, adj }
    }

    /// Parses the `n m` header followed by `m` lines `u v`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(0, "empty graph text"))?;
        let nums = parse_usizes(hl, header)?;
        let [n, m] = nums[..] else {
            return Err(Error::parse(hl, "expected `n m`"));
        };
        let mut g = Graph::empty(n)?;
        let mut read = 0;
        for (ln, line) in lines {
            let nums = parse_usizes(ln, line)?;
            let [u, v] = nums[..] else {
                return Err(Error::parse(ln, "expected `u v`"));
            };
            g.add_edge(u, v).map_err(|e| Error::parse(ln, e.to_string()))?;
            read += 1;
        }
        if read != m {
            return Err(Error::parse(hl, format!("header announces {m} edges, found {read}")));
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

fn parse_usizes(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| Error::parse(line, format!("bad integer `{t}`"))))
        .collect()
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr { n: self.n, edges: self.edges() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GraphRepr::deserialize(d)?;
        Graph::from_edges(r.n, &r.edges).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Non-decreasing degree list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSequence {
    pub degrees: Vec<usize>,
}

impl DegreeSequence {
    pub fn sum(&self) -> usize {
        self.degrees.iter().sum()
    }
}

/// `counts[i - 1]` is the number of unordered pairs at distance `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceProfile {
    pub counts: Vec<usize>,
}

impl DistanceProfile {
    pub fn diameter(&self) -> usize {
        self.counts.len()
    }

    pub fn total_pairs(&self) -> usize {
        self.counts.iter().sum()
    }
}
