//! Girth and short-cycle enumeration for lifted codes.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::Serialize;

use super::{ExponentMatrix, TannerGraph};
use crate::error::{Error, Result};

pub const MAX_CYCLE_LEN: usize = 12;

/// A Tanner-graph cycle `v0 c0 v1 c1 ... v_{k-1} c_{k-1} (v0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CycleWitness {
    pub vars: Vec<usize>,
    pub checks: Vec<usize>,
    /// (block row, block column) of each edge along the cycle, for lifted codes.
    pub blocks: Vec<(usize, usize)>,
    /// Number of distinct cycles in the shift orbit of this one.
    pub orbit_size: usize,
}

impl CycleWitness {
    pub fn len(&self) -> usize {
        2 * self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CycleReport {
    pub max_len: usize,
    /// One witness per shift orbit, sorted by length then node sequence.
    pub orbits: Vec<CycleWitness>,
    /// Total number of cycles (orbits expanded).
    pub raw_count: usize,
    /// length -> (orbit count, raw count)
    pub by_length: BTreeMap<usize, (usize, usize)>,
}

/// Girth of the lifted code. Searches block-level closed walks whose
/// alternating shift sum vanishes mod p up to length 12, then falls back to
/// BFS on the lifted graph (only reachable with zero blocks).
pub fn girth_qc(e: &ExponentMatrix) -> Option<usize> {
    girth_qc_walks(e, MAX_CYCLE_LEN).or_else(|| girth_bfs(&e.tanner()))
}

/// Smallest 2k ≤ `max_len` admitting a tailless, backtrackless block walk
/// j0 -i0- j1 -i1- ... -i_{k-1}- j0 with Σ (e[i_t][j_t] − e[i_t][j_{t+1}]) ≡ 0 (mod p).
pub fn girth_qc_walks(e: &ExponentMatrix, max_len: usize) -> Option<usize> {
    (2..=max_len / 2).find(|&k| has_zero_walk(e, k)).map(|k| 2 * k)
}

fn has_zero_walk(e: &ExponentMatrix, k: usize) -> bool {
    struct W<'a> {
        e: &'a ExponentMatrix,
        k: usize,
        j0: usize,
        i0: usize,
    }
    impl W<'_> {
        /// At column `j` after `steps` completed row visits, coming from row `prev`.
        fn go(&self, j: usize, prev: usize, steps: usize, sum: usize) -> bool {
            let p = self.e.p;
            for i in 0..self.e.rows() {
                if i == prev {
                    continue;
                }
                let Some(a) = self.e.get(i, j) else { continue };
                let last = steps + 1 == self.k;
                if last && i == self.i0 {
                    continue;
                }
                for j2 in self.j0..self.e.cols() {
                    if j2 == j {
                        continue;
                    }
                    let Some(b) = self.e.get(i, j2) else { continue };
                    let s = (sum + a + p - b) % p;
                    if last {
                        if j2 == self.j0 && s == 0 {
                            return true;
                        }
                    } else if self.go(j2, i, steps + 1, s) {
                        return true;
                    }
                }
            }
            false
        }
    }
    // rotate so the walk starts at its smallest column, leaving through row i0
    for j0 in 0..e.cols() {
        for i0 in 0..e.rows() {
            let Some(a) = e.get(i0, j0) else { continue };
            let w = W { e, k, j0, i0 };
            for j1 in (j0 + 1)..e.cols() {
                let Some(b) = e.get(i0, j1) else { continue };
                let s = (a + e.p - b) % e.p;
                if w.go(j1, i0, 1, s) {
                    return true;
                }
            }
        }
    }
    false
}

/// Girth by BFS from every variable orbit representative.
pub fn girth_bfs(t: &TannerGraph) -> Option<usize> {
    let nv = t.num_vars();
    let mut best: Option<usize> = None;
    for root in t.orbit_roots() {
        // nodes: vars 0..nv, checks nv..
        let mut dist = vec![usize::MAX; nv + t.num_checks()];
        let mut parent = vec![usize::MAX; nv + t.num_checks()];
        let mut q = VecDeque::new();
        dist[root] = 0;
        q.push_back(root);
        while let Some(x) = q.pop_front() {
            if best.is_some_and(|b| 2 * dist[x] + 1 >= b) {
                break;
            }
            let nbrs: Box<dyn Iterator<Item = usize>> = if x < nv {
                Box::new(t.var_adj[x].iter().map(|&c| c + nv))
            } else {
                Box::new(t.chk_adj[x - nv].iter().copied())
            };
            for y in nbrs {
                if y == parent[x] {
                    continue;
                }
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    q.push_back(y);
                } else {
                    let len = dist[x] + dist[y] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// All cycles of length ≤ `max_len`, one witness per shift orbit.
pub fn enumerate_cycles(e: &ExponentMatrix, max_len: usize) -> Result<CycleReport> {
    enumerate_cycles_in(&e.tanner(), max_len)
}

pub(crate) fn enumerate_cycles_in(t: &TannerGraph, max_len: usize) -> Result<CycleReport> {
    if max_len > MAX_CYCLE_LEN {
        return Err(Error::ResourceCeiling(format!(
            "cycle enumeration is capped at length {MAX_CYCLE_LEN}, asked for {max_len}"
        )));
    }
    let mut seen: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
    let mut orbits = Vec::new();
    for root in t.orbit_roots() {
        let dist = distances_from_var(t, root);
        let mut vars = vec![root];
        let mut checks = Vec::new();
        let mut found = Vec::new();
        dfs_cycles(t, &dist, max_len, &mut vars, &mut checks, &mut found);
        for (vs, cs) in found {
            let key = orbit_key(t, &vs, &cs);
            if seen.insert(key) {
                orbits.push(make_witness(t, vs, cs));
            }
        }
    }
    orbits.sort_by(|a, b| (a.len(), &a.vars, &a.checks).cmp(&(b.len(), &b.vars, &b.checks)));
    let mut by_length = BTreeMap::new();
    for w in &orbits {
        let entry = by_length.entry(w.len()).or_insert((0, 0));
        entry.0 += 1;
        entry.1 += w.orbit_size;
    }
    let raw_count = orbits.iter().map(|w| w.orbit_size).sum();
    Ok(CycleReport { max_len, orbits, raw_count, by_length })
}

/// Distances (in Tanner edges) from a variable to every node; checks after vars.
pub(crate) fn distances_from_var(t: &TannerGraph, root: usize) -> Vec<usize> {
    let nv = t.num_vars();
    let mut dist = vec![usize::MAX; nv + t.num_checks()];
    let mut q = VecDeque::new();
    dist[root] = 0;
    q.push_back(root);
    while let Some(x) = q.pop_front() {
        let d = dist[x] + 1;
        if x < nv {
            for &c in &t.var_adj[x] {
                if dist[c + nv] == usize::MAX {
                    dist[c + nv] = d;
                    q.push_back(c + nv);
                }
            }
        } else {
            for &v in &t.chk_adj[x - nv] {
                if dist[v] == usize::MAX {
                    dist[v] = d;
                    q.push_back(v);
                }
            }
        }
    }
    dist
}

fn dfs_cycles(
    t: &TannerGraph,
    dist: &[usize],
    max_len: usize,
    vars: &mut Vec<usize>,
    checks: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, Vec<usize>)>,
) {
    let nv = t.num_vars();
    let root = vars[0];
    let v = *vars.last().unwrap();
    let used = 2 * vars.len() - 1; // edges after taking the next check
    for &c in &t.var_adj[v] {
        if checks.contains(&c) || used.saturating_add(dist[c + nv]) > max_len {
            continue;
        }
        for &w in &t.chk_adj[c] {
            if w == v {
                continue;
            }
            if w == root {
                if vars.len() >= 2 {
                    checks.push(c);
                    out.push((vars.clone(), checks.clone()));
                    checks.pop();
                }
                continue;
            }
            if vars.contains(&w) || (used + 1).saturating_add(dist[w]) > max_len {
                continue;
            }
            vars.push(w);
            checks.push(c);
            dfs_cycles(t, dist, max_len, vars, checks, out);
            vars.pop();
            checks.pop();
        }
    }
}

/// Canonical (vars, checks) sequence up to rotation and reflection.
pub(crate) fn canonical_cycle(vars: &[usize], checks: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = vars.len();
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for s in 0..k {
        // forward: v_s c_s v_{s+1} ...
        let fv: Vec<usize> = (0..k).map(|i| vars[(s + i) % k]).collect();
        let fc: Vec<usize> = (0..k).map(|i| checks[(s + i) % k]).collect();
        // backward: v_s c_{s-1} v_{s-1} ...
        let bv: Vec<usize> = (0..k).map(|i| vars[(s + k - i) % k]).collect();
        let bc: Vec<usize> = (0..k).map(|i| checks[(s + 2 * k - i - 1) % k]).collect();
        for cand in [(fv, fc), (bv, bc)] {
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap()
}

pub(crate) fn shift_cycle(t: &TannerGraph, vars: &[usize], checks: &[usize], k: usize) -> (Vec<usize>, Vec<usize>) {
    (
        vars.iter().map(|&v| t.shift_var(v, k)).collect(),
        checks.iter().map(|&c| t.shift_check(c, k)).collect(),
    )
}

fn shifts(t: &TannerGraph) -> usize {
    t.qc.map_or(1, |q| q.p)
}

pub(crate) fn orbit_key(t: &TannerGraph, vars: &[usize], checks: &[usize]) -> (Vec<usize>, Vec<usize>) {
    (0..shifts(t))
        .map(|k| {
            let (v, c) = shift_cycle(t, vars, checks, k);
            canonical_cycle(&v, &c)
        })
        .min()
        .unwrap()
}

fn make_witness(t: &TannerGraph, vars: Vec<usize>, checks: Vec<usize>) -> CycleWitness {
    let (vars, checks) = canonical_cycle(&vars, &checks);
    let me = (vars.clone(), checks.clone());
    let stab = (0..shifts(t))
        .filter(|&k| {
            let (v, c) = shift_cycle(t, &vars, &checks, k);
            canonical_cycle(&v, &c) == me
        })
        .count();
    let blocks = match t.qc {
        Some(q) => {
            let k = vars.len();
            let mut b = Vec::with_capacity(2 * k);
            for i in 0..k {
                b.push((checks[i] / q.p, vars[i] / q.p));
                b.push((checks[i] / q.p, vars[(i + 1) % k] / q.p));
            }
            b
        }
        None => Vec::new(),
    };
    CycleWitness { vars, checks, blocks, orbit_size: shifts(t) / stab }
}
