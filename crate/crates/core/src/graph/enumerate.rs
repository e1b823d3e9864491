//! Isomorph-free generation by canonical vertex augmentation.
//!
//! A graph on `k + 1` vertices is produced from its parent on `k` vertices by
//! adding vertex `k` with neighborhood `S`. A child is kept only if the new
//! vertex is a canonical deletion vertex: it has minimum degree, maximal
//! neighbor-degree sum among those, and is equivalent to the highest-ranked
//! such vertex of the canonical labeling. Deleting minimum-degree vertices
//! makes the minimum-degree and edge-budget constraints prunable on the way
//! up, and maximum degree, girth and forbidden subgraphs are hereditary.

use std::collections::HashSet;

use rayon::prelude::*;

use super::canon::{canonical_labeling, CanonicalForm};
use super::subgraph::find_embedding_through;
use super::{bit, iter_bits, Graph};
use crate::error::{Error, Result};

pub const DEFAULT_ENUM_CEILING: usize = 14;

/// Constraints on the generated graphs. Unset fields do not constrain.
#[derive(Clone, Debug)]
pub struct EnumConstraints {
    pub edge_count: Option<usize>,
    pub max_degree: Option<usize>,
    pub min_degree: Option<usize>,
    pub girth_at_least: Option<usize>,
    pub connected: bool,
    pub forbidden: Vec<Graph>,
    /// Largest order the enumerator accepts.
    pub ceiling: usize,
}

impl Default for EnumConstraints {
    fn default() -> Self {
        EnumConstraints {
            edge_count: None,
            max_degree: None,
            min_degree: None,
            girth_at_least: None,
            connected: false,
            forbidden: Vec::new(),
            ceiling: DEFAULT_ENUM_CEILING,
        }
    }
}

impl EnumConstraints {
    pub fn edges(mut self, m: usize) -> Self {
        self.edge_count = Some(m);
        self
    }

    pub fn max_degree(mut self, d: usize) -> Self {
        self.max_degree = Some(d);
        self
    }

    pub fn min_degree(mut self, d: usize) -> Self {
        self.min_degree = Some(d);
        self
    }

    pub fn girth_at_least(mut self, g: usize) -> Self {
        self.girth_at_least = Some(g);
        self
    }

    pub fn connected(mut self) -> Self {
        self.connected = true;
        self
    }

    pub fn forbid(mut self, h: Graph) -> Self {
        self.forbidden.push(h);
        self
    }

    pub fn ceiling(mut self, n: usize) -> Self {
        self.ceiling = n;
        self
    }

    /// Post-hoc check of every constraint (used by tests and audits).
    pub fn admits(&self, g: &Graph) -> bool {
        self.edge_count.is_none_or(|m| g.edge_count() == m)
            && self.max_degree.is_none_or(|d| g.max_degree() <= d)
            && self.min_degree.is_none_or(|d| g.order() == 0 || g.min_degree() >= d)
            && self.girth_at_least.is_none_or(|k| g.girth().is_none_or(|gg| gg >= k))
            && (!self.connected || g.is_connected())
            && self.forbidden.iter().all(|h| !super::contains_subgraph(g, h))
    }
}

/// One representative per isomorphism class satisfying `c`, each canonically
/// labeled, sorted by canonical form.
pub fn enumerate_graphs(n: usize, c: &EnumConstraints) -> Result<Vec<Graph>> {
    let gen = Generator::new(n, c)?;
    let Some(roots) = gen.roots() else {
        return Ok(Vec::new());
    };
    let mut found: Vec<(CanonicalForm, Graph)> = roots
        .into_par_iter()
        .flat_map_iter(|node| {
            let mut out = Vec::new();
            gen.dfs(node, &mut |f, g| {
                out.push((f, g));
                true
            });
            out
        })
        .collect();
    found.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    found.dedup_by(|a, b| a.0 == b.0);
    Ok(found.into_iter().map(|(_, g)| g).collect())
}

/// Some graph satisfying `c`, if one exists.
pub fn find_graph(n: usize, c: &EnumConstraints) -> Result<Option<Graph>> {
    let gen = Generator::new(n, c)?;
    let Some(roots) = gen.roots() else {
        return Ok(None);
    };
    Ok(roots.into_par_iter().find_map_any(|node| {
        let mut hit = None;
        gen.dfs(node, &mut |_, g| {
            hit = Some(g);
            false
        });
        hit
    }))
}

#[derive(Clone)]
struct Node {
    g: Graph,
    form: CanonicalForm,
}

struct Generator<'a> {
    n: usize,
    c: &'a EnumConstraints,
    max_deg: usize,
    min_deg: usize,
}

/// Level at which the search tree is split into parallel tasks.
const SPLIT_LEVEL: usize = 7;

impl<'a> Generator<'a> {
    fn new(n: usize, c: &'a EnumConstraints) -> Result<Self> {
        if n > c.ceiling {
            return Err(Error::ResourceCeiling(format!(
                "enumeration of order {n} exceeds the configured ceiling {}",
                c.ceiling
            )));
        }
        if n > super::MAX_VERTICES {
            return Err(Error::ResourceCeiling(format!("order {n} exceeds bitset width")));
        }
        let max_deg = c.max_degree.unwrap_or(n.saturating_sub(1)).min(n.saturating_sub(1));
        let min_deg = c.min_degree.unwrap_or(0);
        Ok(Generator { n, c, max_deg, min_deg })
    }

    /// Nodes at the split level (or the finished graphs if `n` is small),
    /// generated breadth-first. `None` when the constraints are infeasible.
    fn roots(&self) -> Option<Vec<Node>> {
        if self.n == 0 {
            let g = Graph::empty(0).ok()?;
            if !self.final_ok(&g) {
                return None;
            }
            let form = canonical_labeling(&g).form;
            return Some(vec![Node { g, form }]);
        }
        let k1 = Graph::empty(1).ok()?;
        let form = canonical_labeling(&k1).form;
        let mut level = vec![Node { g: k1, form }];
        if !self.feasible_level(1, 0, self.spare(&level[0].g)) {
            return None;
        }
        let stop = SPLIT_LEVEL.min(self.n);
        for _ in 1..stop {
            level = level.par_iter().flat_map_iter(|p| self.children(p)).collect();
        }
        Some(level)
    }

    /// Depth-first expansion; `emit` returns false to stop the search.
    fn dfs(&self, node: Node, emit: &mut dyn FnMut(CanonicalForm, Graph) -> bool) -> bool {
        if node.g.order() == self.n {
            if self.final_ok(&node.g) {
                let lab = canonical_labeling(&node.g);
                return emit(lab.form, node.g.permuted(&lab.perm));
            }
            return true;
        }
        for child in self.children(&node) {
            if !self.dfs(child, emit) {
                return false;
            }
        }
        true
    }

    fn final_ok(&self, g: &Graph) -> bool {
        self.c.edge_count.is_none_or(|m| g.edge_count() == m)
            && (g.order() == 0 || g.min_degree() >= self.min_deg)
            && (!self.c.connected || g.is_connected())
    }

    fn spare(&self, g: &Graph) -> usize {
        (0..g.order()).map(|v| self.max_deg.saturating_sub(g.degree(v))).sum()
    }

    /// Whether a graph on `k` vertices with `e` edges can still grow into an admissible graph on `n` vertices.
    fn feasible_level(&self, k: usize, e: usize, spare: usize) -> bool {
        let n = self.n;
        let Some(m) = self.c.edge_count else {
            return true;
        };
        if e > m {
            return false;
        }
        let r = n - k;
        // later vertex j (order j) has degree >= min_deg - (n - j)
        let lower: usize = ((k + 1)..=n).map(|j| self.min_deg.saturating_sub(n - j)).sum();
        let cap_deg = self.max_deg * r;
        let upper_deg = (cap_deg + spare.min(cap_deg)) / 2;
        let upper_free = r * k + r * r.saturating_sub(1) / 2;
        let upper = upper_deg.min(upper_free);
        m - e >= lower && m - e <= upper
    }

    fn children(&self, p: &Node) -> Vec<Node> {
        let k = p.g.order();
        let g = &p.g;
        let e = g.edge_count();
        let n = self.n;
        let degs: Vec<usize> = (0..k).map(|v| g.degree(v)).collect();
        let mind_parent = degs.iter().copied().min().unwrap_or(0);

        // vertices within distance girth-3 of x may not both be neighbors
        let near: Option<Vec<u64>> = self.c.girth_at_least.filter(|&gg| gg > 3).map(|gg| {
            (0..k)
                .map(|x| {
                    g.bfs_distances(x)
                        .iter()
                        .enumerate()
                        .filter(|(_, d)| d.is_some_and(|d| d + 2 < gg))
                        .fold(0u64, |m, (y, _)| m | bit(y))
                })
                .collect()
        });

        let mut out = Vec::new();
        let mut seen: HashSet<CanonicalForm> = HashSet::new();
        let d_lo = self.min_deg.saturating_sub(n - (k + 1));
        let d_hi = self.max_deg.min(mind_parent + 1).min(k);
        for d in d_lo..=d_hi {
            // vertices with degree d-1 must gain the new neighbor
            let forced: u64 = if d == 0 {
                0
            } else {
                (0..k).filter(|&u| degs[u] + 1 == d).fold(0, |m, u| m | bit(u))
            };
            if d > 0 && (0..k).any(|u| degs[u] + 1 < d) {
                continue;
            }
            if forced.count_ones() as usize > d {
                continue;
            }
            if (iter_bits(forced)).any(|u| degs[u] >= self.max_deg) {
                continue;
            }
            let free: u64 = (0..k)
                .filter(|&u| degs[u] >= d && degs[u] < self.max_deg)
                .fold(0, |m, u| m | bit(u));
            let child_spare_base = self.spare(g);
            // check forced set against girth
            let mut allowed = free;
            if let Some(near) = &near {
                let mut ok = true;
                for u in iter_bits(forced) {
                    if near[u] & forced & !bit(u) != 0 {
                        ok = false;
                    }
                    allowed &= !near[u];
                }
                if !ok {
                    continue;
                }
            }
            let need = d - forced.count_ones() as usize;
            let new_e = e + d;
            // spare after adding: each chosen loses one, new vertex has max_deg - d
            let child_spare = child_spare_base.saturating_sub(d) + self.max_deg.saturating_sub(d);
            if !self.feasible_level(k + 1, new_e, child_spare) {
                continue;
            }
            let mut chosen = forced;
            self.subsets(allowed, need, &mut chosen, near.as_deref(), &mut |s| {
                if let Some(child) = self.try_child(p, s, d) {
                    if seen.insert(child.form.clone()) {
                        out.push(child);
                    }
                }
            });
        }
        out
    }

    fn subsets(
        &self,
        allowed: u64,
        need: usize,
        chosen: &mut u64,
        near: Option<&[u64]>,
        f: &mut dyn FnMut(u64),
    ) {
        if need == 0 {
            f(*chosen);
            return;
        }
        if (allowed.count_ones() as usize) < need {
            return;
        }
        let mut rest = allowed;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (rest.count_ones() as usize) + 1 < need {
                break;
            }
            let mut next = rest;
            if let Some(near) = near {
                next &= !near[x];
            }
            *chosen |= bit(x);
            self.subsets(next, need - 1, chosen, near, f);
            *chosen &= !bit(x);
        }
    }

    fn try_child(&self, p: &Node, s: u64, d: usize) -> Option<Node> {
        let k = p.g.order();
        let mut rows: Vec<u64> = p.g.rows().to_vec();
        for u in iter_bits(s) {
            rows[u] |= bit(k);
        }
        rows.push(s);
        let child = Graph::from_adjacency(rows);
        for h in &self.c.forbidden {
            if find_embedding_through(&child, h, k).is_some() {
                return None;
            }
        }
        // canonical deletion candidates
        let inv = |u: usize| -> usize { child.neighbors(u).map(|w| child.degree(w)).sum() };
        let inv_v = inv(k);
        let mut cands = 0u64;
        for u in 0..=k {
            if child.degree(u) == d {
                let iu = inv(u);
                if iu > inv_v {
                    return None;
                }
                if iu == inv_v {
                    cands |= bit(u);
                }
            }
        }
        let lab = canonical_labeling(&child);
        if cands != bit(k) {
            let u = iter_bits(cands).max_by_key(|&c| lab.perm[c]).unwrap();
            if u != k {
                let orbits = lab.orbits();
                if orbits[u] != orbits[k] {
                    let reduced = child.delete_vertex(u).ok()?;
                    if canonical_labeling(&reduced).form != p.form {
                        return None;
                    }
                }
            }
        }
        Some(Node { g: child, form: lab.form })
    }
}
