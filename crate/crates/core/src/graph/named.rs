//! Named graphs: parametric families and the fixed shapes kept in
//! `data/named_graphs.txt`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use super::Graph;
use crate::error::{Error, Result};

const REGISTRY_TEXT: &str = include_str!("../../data/named_graphs.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedGraph {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    /// Star on `n` vertices (one center, `n - 1` leaves).
    Star(usize),
    /// Two vertices joined by internally disjoint paths of lengths a ≤ b ≤ c.
    Theta(usize, usize, usize),
    /// Cycles `C_a` and `C_b` joined by a path of length `q` (`q = 0`: shared vertex).
    Dumbbell(usize, usize, usize),
    G1,
    G2,
    G3,
    K33,
    H3,
    GPrime,
    /// VN graph of the Tanner pattern `T_i`.
    TPatternVn(usize),
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NamedGraph::Path(k) => write!(f, "path {k}"),
            NamedGraph::Cycle(k) => write!(f, "cycle {k}"),
            NamedGraph::Complete(n) => write!(f, "complete {n}"),
            NamedGraph::CompleteBipartite(m, n) => write!(f, "complete_bipartite {m} {n}"),
            NamedGraph::Star(n) => write!(f, "star {n}"),
            NamedGraph::Theta(a, b, c) => write!(f, "theta {a} {b} {c}"),
            NamedGraph::Dumbbell(a, b, q) => write!(f, "dumbbell {a} {b} {q}"),
            NamedGraph::G1 => f.write_str("G1"),
            NamedGraph::G2 => f.write_str("G2"),
            NamedGraph::G3 => f.write_str("G3"),
            NamedGraph::K33 => f.write_str("K33"),
            NamedGraph::H3 => f.write_str("H3"),
            NamedGraph::GPrime => f.write_str("Gprime"),
            NamedGraph::TPatternVn(i) => write!(f, "T{i}-vn"),
        }
    }
}

impl FromStr for NamedGraph {
    type Err = Error;

    /// Accepts e.g. `cycle 5`, `theta 2 2 2`, `dumbbell:4,4,0`, `G1`, `T2-vn`.
    fn from_str(s: &str) -> Result<Self> {
        let toks: Vec<&str> = s
            .split(|c: char| c.is_whitespace() || c == ':' || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        let Some((&head, rest)) = toks.split_first() else {
            return Err(Error::Parameter("empty graph name".into()));
        };
        let nums: Vec<usize> = rest
            .iter()
            .map(|t| t.parse().map_err(|_| Error::Parameter(format!("bad number `{t}` in `{s}`"))))
            .collect::<Result<_>>()?;
        let arity = |k: usize| -> Result<()> {
            if nums.len() == k {
                Ok(())
            } else {
                Err(Error::Parameter(format!("`{head}` takes {k} parameter(s), got {}", nums.len())))
            }
        };
        let named = match head.to_ascii_lowercase().as_str() {
            "path" => arity(1).map(|_| NamedGraph::Path(nums[0]))?,
            "cycle" => arity(1).map(|_| NamedGraph::Cycle(nums[0]))?,
            "complete" => arity(1).map(|_| NamedGraph::Complete(nums[0]))?,
            "complete_bipartite" | "bipartite" => {
                arity(2).map(|_| NamedGraph::CompleteBipartite(nums[0], nums[1]))?
            }
            "star" => arity(1).map(|_| NamedGraph::Star(nums[0]))?,
            "theta" => arity(3).map(|_| NamedGraph::Theta(nums[0], nums[1], nums[2]))?,
            "dumbbell" => arity(3).map(|_| NamedGraph::Dumbbell(nums[0], nums[1], nums[2]))?,
            "g1" => arity(0).map(|_| NamedGraph::G1)?,
            "g2" => arity(0).map(|_| NamedGraph::G2)?,
            "g3" => arity(0).map(|_| NamedGraph::G3)?,
            "k33" => arity(0).map(|_| NamedGraph::K33)?,
            "h3" | "prism" => arity(0).map(|_| NamedGraph::H3)?,
            "gprime" | "g'" => arity(0).map(|_| NamedGraph::GPrime)?,
            "t1-vn" => NamedGraph::TPatternVn(1),
            "t2-vn" => NamedGraph::TPatternVn(2),
            "t3-vn" => NamedGraph::TPatternVn(3),
            _ => return Err(Error::Parameter(format!("unknown graph name `{head}`"))),
        };
        Ok(named)
    }
}

pub fn make_named(kind: NamedGraph) -> Result<Graph> {
    match kind {
        NamedGraph::Path(k) => {
            let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
            Graph::from_edges(k, &edges)
        }
        NamedGraph::Cycle(k) => {
            if k < 3 {
                return Err(Error::Parameter(format!("cycle needs at least 3 vertices, got {k}")));
            }
            let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
            Graph::from_edges(k, &edges)
        }
        NamedGraph::Complete(n) => {
            let edges: Vec<_> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
            Graph::from_edges(n, &edges)
        }
        NamedGraph::CompleteBipartite(m, n) => {
            let edges: Vec<_> = (0..m).flat_map(|u| (m..m + n).map(move |v| (u, v))).collect();
            Graph::from_edges(m + n, &edges)
        }
        NamedGraph::Star(n) => {
            let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
            Graph::from_edges(n, &edges)
        }
        NamedGraph::Theta(a, b, c) => theta(a, b, c),
        NamedGraph::Dumbbell(a, b, q) => dumbbell(a, b, q),
        NamedGraph::G1 => registry().graph("G1"),
        NamedGraph::G2 => registry().graph("G2"),
        NamedGraph::G3 => registry().graph("G3"),
        NamedGraph::K33 => registry().graph("K33"),
        NamedGraph::H3 => registry().graph("H3"),
        NamedGraph::GPrime => registry().graph("Gprime"),
        NamedGraph::TPatternVn(i) => Ok(registry().pattern(i)?.vn_graph()),
    }
}

fn theta(a: usize, b: usize, c: usize) -> Result<Graph> {
    if !(1 <= a && a <= b && b <= c) || b == 1 {
        return Err(Error::Parameter(format!(
            "theta({a},{b},{c}) needs 1 <= a <= b <= c with b >= 2"
        )));
    }
    let n = a + b + c - 1;
    let mut g = Graph::empty(n)?;
    let mut next = 2;
    for len in [a, b, c] {
        let mut prev = 0;
        for _ in 1..len {
            g.add_edge(prev, next)?;
            prev = next;
            next += 1;
        }
        g.add_edge(prev, 1)?;
    }
    Ok(g)
}

fn dumbbell(a: usize, b: usize, q: usize) -> Result<Graph> {
    if a < 3 || b < 3 {
        return Err(Error::Parameter(format!("dumbbell({a},{b};{q}) needs cycles of length >= 3")));
    }
    let n = a + b + q - 1;
    let mut g = Graph::empty(n)?;
    // first cycle on 0..a, bridge 0 - a - ... - a+q-1, second cycle at the bridge end
    for i in 0..a {
        g.add_edge(i, (i + 1) % a)?;
    }
    let mut prev = 0;
    for v in a..a + q {
        g.add_edge(prev, v)?;
        prev = v;
    }
    let start = a + q;
    let mut ring = vec![prev];
    ring.extend(start..start + b - 1);
    for i in 0..b {
        g.add_edge(ring[i], ring[(i + 1) % b])?;
    }
    Ok(g)
}

/// A Tanner graph pattern: variables `0..variables`, checks after them.
#[derive(Clone, Debug)]
pub struct TannerPattern {
    pub name: String,
    pub variables: usize,
    pub graph: Graph,
}

impl TannerPattern {
    pub fn checks(&self) -> usize {
        self.graph.order() - self.variables
    }

    /// Check neighborhoods as lists of variable indices.
    pub fn check_lists(&self) -> Vec<Vec<usize>> {
        (self.variables..self.graph.order())
            .map(|c| self.graph.neighbors(c).collect())
            .collect()
    }

    /// VN graph: one edge per degree-2 check.
    pub fn vn_graph(&self) -> Graph {
        let mut g = Graph::empty(self.variables).expect("pattern order within bounds");
        for nb in self.check_lists() {
            if let [u, v] = nb[..] {
                let _ = g.add_edge(u, v);
            }
        }
        g
    }

    /// Builds the pattern of a VN graph: one degree-2 check per edge.
    pub fn from_vn_graph(name: &str, vn: &Graph) -> Result<Self> {
        let a = vn.order();
        let edges = vn.edges();
        let mut g = Graph::empty(a + edges.len())?;
        for (k, (u, v)) in edges.into_iter().enumerate() {
            g.add_edge(u, a + k)?;
            g.add_edge(v, a + k)?;
        }
        Ok(TannerPattern { name: name.to_string(), variables: a, graph: g })
    }
}

#[derive(Debug)]
pub struct NamedRegistry {
    graphs: BTreeMap<String, Graph>,
    patterns: BTreeMap<usize, TannerPattern>,
}

impl NamedRegistry {
    pub fn parse(text: &str) -> Result<Self> {
        let mut graphs = BTreeMap::new();
        let mut patterns = BTreeMap::new();
        let mut sections: Vec<(usize, String, String)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let t = line.trim();
            if let Some(name) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
                sections.push((i + 1, name.to_string(), String::new()));
            } else if let Some(cur) = sections.last_mut() {
                cur.2.push_str(line);
                cur.2.push('\n');
            } else if !t.is_empty() && !t.starts_with('#') {
                return Err(Error::parse(i + 1, "content before the first [name] header"));
            }
        }
        for (line, name, body) in sections {
            let g = Graph::parse(&body).map_err(|e| Error::parse(line, format!("[{name}]: {e}")))?;
            if let Some(idx) = name.strip_prefix('T').and_then(|r| r.parse::<usize>().ok()) {
                let variables = variable_count(&g)
                    .ok_or_else(|| Error::parse(line, format!("[{name}] is not a VN-first bipartite pattern")))?;
                patterns.insert(idx, TannerPattern { name, variables, graph: g });
            } else {
                graphs.insert(name, g);
            }
        }
        Ok(NamedRegistry { graphs, patterns })
    }

    pub fn graph(&self, name: &str) -> Result<Graph> {
        self.graphs
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Parameter(format!("no registry graph named `{name}`")))
    }

    pub fn pattern(&self, i: usize) -> Result<&TannerPattern> {
        self.patterns
            .get(&i)
            .ok_or_else(|| Error::Parameter(format!("no Tanner pattern T{i}")))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.graphs.keys().map(String::as_str)
    }
}

/// Variables are the prefix `0..k` such that no edge lies inside `0..k` or
/// inside `k..n`; returns that `k`.
fn variable_count(g: &Graph) -> Option<usize> {
    let n = g.order();
    (1..n).find(|&k| g.edges().iter().all(|&(u, v)| u < k && v >= k))
}

pub fn registry() -> &'static NamedRegistry {
    static REG: OnceLock<NamedRegistry> = OnceLock::new();
    REG.get_or_init(|| NamedRegistry::parse(REGISTRY_TEXT).expect("bundled registry parses"))
}
