//! Exhaustive search for small elementary trapping sets in a Tanner graph.
//!
//! Sets are grown from a root variable. At each node the smallest
//! unresolved degree-1 check is either declared odd (its other variables are
//! then excluded) or closed by adding exactly one of its other variables.
//! Every connected ETS containing the root is reached by exactly one path.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::cycles::{girth_bfs, girth_qc};
use super::{ExponentMatrix, TannerGraph};
use crate::error::{Error, Result};
use crate::ets::vn_spectral_radius;
use crate::graph::Graph;

/// Largest set size the search accepts.
pub const MAX_ETS_SEARCH: usize = 12;

#[derive(Clone, Debug, Serialize)]
pub struct EtsRecord {
    pub vars: Vec<usize>,
    pub a: usize,
    pub b: usize,
    pub vn_graph: Graph,
    pub rho: f64,
    /// Distinct sets in the shift orbit of this one.
    pub orbit_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EtsSearchReport {
    pub a_max: usize,
    pub b_max: usize,
    pub tanner_girth: Option<usize>,
    /// One record per shift orbit, sorted by (a, b, vars).
    pub records: Vec<EtsRecord>,
    /// (a, b) -> (orbit count, raw count)
    #[serde(serialize_with = "counts_as_list")]
    pub counts: BTreeMap<(usize, usize), (usize, usize)>,
}

fn counts_as_list<S: serde::Serializer>(
    m: &BTreeMap<(usize, usize), (usize, usize)>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Entry {
        a: usize,
        b: usize,
        orbits: usize,
        sets: usize,
    }
    s.collect_seq(m.iter().map(|(&(a, b), &(orbits, sets))| Entry { a, b, orbits, sets }))
}

impl EtsSearchReport {
    pub fn raw_count(&self) -> usize {
        self.counts.values().map(|c| c.1).sum()
    }
}

pub fn ets_search(e: &ExponentMatrix, a_max: usize, b_max: usize) -> Result<EtsSearchReport> {
    let t = e.tanner();
    search(&t, a_max, b_max, girth_qc(e))
}

/// Same search on an arbitrary Tanner graph (e.g. read from an alist file).
pub fn ets_search_in_code(t: &TannerGraph, a_max: usize, b_max: usize) -> Result<EtsSearchReport> {
    search(t, a_max, b_max, girth_bfs(t))
}

fn search(t: &TannerGraph, a_max: usize, b_max: usize, girth: Option<usize>) -> Result<EtsSearchReport> {
    if a_max > MAX_ETS_SEARCH {
        return Err(Error::ResourceCeiling(format!("a_max = {a_max} exceeds {MAX_ETS_SEARCH}")));
    }
    if a_max == 0 {
        return Err(Error::Parameter("a_max must be positive".into()));
    }
    let gamma = t.var_adj.iter().map(Vec::len).max().unwrap_or(0);
    let g = girth.unwrap_or(usize::MAX);
    let cap = move |a: usize| {
        if g >= 8 {
            a * a / 4
        } else if g >= 6 {
            a * a.saturating_sub(1) / 2
        } else {
            usize::MAX
        }
    };
    let qc = t.qc.is_some();
    let found: Vec<Vec<usize>> = t
        .orbit_roots()
        .into_par_iter()
        .flat_map_iter(|root| {
            let mut s = Search::new(t, a_max, b_max, gamma, &cap);
            if !qc {
                for v in 0..root {
                    s.excluded[v] += 1;
                }
            }
            s.add(root);
            s.run();
            s.out
        })
        .collect();

    let p = t.qc.map_or(1, |q| q.p);
    let mut seen = HashSet::new();
    let mut records = Vec::new();
    for mut vars in found {
        vars.sort_unstable();
        let image = |k: usize| {
            let mut v: Vec<usize> = vars.iter().map(|&x| t.shift_var(x, k)).collect();
            v.sort_unstable();
            v
        };
        let key = (0..p).map(image).min().unwrap();
        if !seen.insert(key.clone()) {
            continue;
        }
        let stab = (0..p).filter(|&k| image(k) == vars).count();
        let vn = vn_graph_of(t, &key)?;
        let b = odd_checks(t, &key);
        let rho = vn_spectral_radius(&vn)?;
        records.push(EtsRecord { a: key.len(), b, vars: key, vn_graph: vn, rho, orbit_size: p / stab });
    }
    records.sort_by(|x, y| (x.a, x.b, &x.vars).cmp(&(y.a, y.b, &y.vars)));
    let mut counts = BTreeMap::new();
    for r in &records {
        let c = counts.entry((r.a, r.b)).or_insert((0, 0));
        c.0 += 1;
        c.1 += r.orbit_size;
    }
    Ok(EtsSearchReport { a_max, b_max, tanner_girth: girth, records, counts })
}

/// VN graph of a variable set: one edge per degree-2 check.
fn vn_graph_of(t: &TannerGraph, vars: &[usize]) -> Result<Graph> {
    let mut g = Graph::empty(vars.len())?;
    let idx = |v: usize| vars.binary_search(&v).ok();
    for (i, &v) in vars.iter().enumerate() {
        for &c in &t.var_adj[v] {
            for &w in &t.chk_adj[c] {
                if let Some(j) = idx(w) {
                    if j > i && !g.has_edge(i, j) {
                        g.add_edge(i, j)?;
                    }
                }
            }
        }
    }
    Ok(g)
}

fn odd_checks(t: &TannerGraph, vars: &[usize]) -> usize {
    let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in vars {
        for &c in &t.var_adj[v] {
            *deg.entry(c).or_default() += 1;
        }
    }
    deg.values().filter(|&&d| d % 2 == 1).count()
}

struct Search<'a, F: Fn(usize) -> usize> {
    t: &'a TannerGraph,
    a_max: usize,
    b_max: usize,
    gamma: usize,
    gamma_min: usize,
    cap: &'a F,
    deg_sum: usize,
    set: Vec<usize>,
    in_set: Vec<bool>,
    excluded: Vec<u32>,
    chk_deg: Vec<u8>,
    /// Degree-1 checks still open.
    unresolved: BTreeSet<usize>,
    marked: usize,
    /// Degree-2 checks inside the set.
    edges: usize,
    out: Vec<Vec<usize>>,
}

impl<'a, F: Fn(usize) -> usize> Search<'a, F> {
    fn new(t: &'a TannerGraph, a_max: usize, b_max: usize, gamma: usize, cap: &'a F) -> Self {
        Search {
            t,
            a_max,
            b_max,
            gamma,
            gamma_min: t.var_adj.iter().map(Vec::len).min().unwrap_or(0),
            cap,
            deg_sum: 0,
            set: Vec::new(),
            in_set: vec![false; t.num_vars()],
            excluded: vec![0; t.num_vars()],
            chk_deg: vec![0; t.num_checks()],
            unresolved: BTreeSet::new(),
            marked: 0,
            edges: 0,
            out: Vec::new(),
        }
    }

    /// Adds `v`; returns false (with nothing changed) if a check would reach degree 3.
    fn add(&mut self, v: usize) -> bool {
        if self.t.var_adj[v].iter().any(|&c| self.chk_deg[c] >= 2) {
            return false;
        }
        self.set.push(v);
        self.in_set[v] = true;
        self.deg_sum += self.t.var_adj[v].len();
        for &c in &self.t.var_adj[v] {
            self.chk_deg[c] += 1;
            if self.chk_deg[c] == 1 {
                self.unresolved.insert(c);
            } else {
                self.unresolved.remove(&c);
                self.edges += 1;
                self.exclude_check(c, 1);
            }
        }
        true
    }

    fn remove(&mut self, v: usize) {
        self.set.pop();
        for &c in self.t.var_adj[v].iter().rev() {
            if self.chk_deg[c] == 2 {
                self.exclude_check(c, -1);
                self.edges -= 1;
                self.unresolved.insert(c);
            } else {
                self.unresolved.remove(&c);
            }
            self.chk_deg[c] -= 1;
        }
        self.in_set[v] = false;
        self.deg_sum -= self.t.var_adj[v].len();
    }

    fn exclude_check(&mut self, c: usize, delta: i32) {
        for &w in &self.t.chk_adj[c] {
            if !self.in_set[w] {
                self.excluded[w] = (self.excluded[w] as i32 + delta) as u32;
            }
        }
    }

    /// Lower bound on the final number of odd checks over all completions.
    fn lower_bound(&self) -> usize {
        let s = self.set.len();
        let u = self.unresolved.len();
        let g = self.gamma;
        (0..=self.a_max - s)
            .map(|r| {
                let by_cover = self.marked + u.saturating_sub(g * r);
                let x = u.min(g * r);
                let emax = (self.edges + x + ((g * r - x) / 2).min(r * r.saturating_sub(1) / 2)).min((self.cap)(s + r));
                let by_edges = (self.deg_sum + r * self.gamma_min).saturating_sub(2 * emax);
                by_cover.max(by_edges)
            })
            .min()
            .unwrap()
    }

    fn run(&mut self) {
        if self.marked > self.b_max || self.lower_bound() > self.b_max {
            return;
        }
        let Some(&c) = self.unresolved.iter().next() else {
            self.out.push(self.set.clone());
            return;
        };
        // declare c odd
        self.unresolved.remove(&c);
        self.marked += 1;
        self.exclude_check(c, 1);
        self.run();
        self.exclude_check(c, -1);
        self.marked -= 1;
        self.unresolved.insert(c);
        // close c with one more variable
        if self.set.len() == self.a_max {
            return;
        }
        for i in 0..self.t.chk_adj[c].len() {
            let w = self.t.chk_adj[c][i];
            if self.in_set[w] || self.excluded[w] > 0 {
                continue;
            }
            if self.add(w) {
                self.run();
                self.remove(w);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;
    use crate::qc::builtin;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tanner(nv: usize, checks: Vec<Vec<usize>>) -> TannerGraph {
        let mut var_adj = vec![Vec::new(); nv];
        for (c, nb) in checks.iter().enumerate() {
            for &v in nb {
                var_adj[v].push(c);
            }
        }
        TannerGraph { var_adj, chk_adj: checks, qc: None }
    }

    /// Connected variable subsets whose checks all have degree ≤ 2.
    fn brute(t: &TannerGraph, a_max: usize, b_max: usize) -> BTreeSet<Vec<usize>> {
        let n = t.num_vars();
        let mut out = BTreeSet::new();
        for mask in 1u32..(1 << n) {
            let vars: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if vars.len() > a_max {
                continue;
            }
            let mut deg = vec![0; t.num_checks()];
            for &v in &vars {
                for &c in &t.var_adj[v] {
                    deg[c] += 1;
                }
            }
            if deg.iter().any(|&d| d > 2) || deg.iter().filter(|&&d| d == 1).count() > b_max {
                continue;
            }
            if vn_graph_of(t, &vars).unwrap().is_connected() {
                out.insert(vars);
            }
        }
        out
    }

    #[test]
    fn planted_set_is_found() {
        // C5 plus chord 0-2, variable degree 3: three degree-1 checks
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)];
        let mut checks: Vec<Vec<usize>> = edges.iter().map(|&(u, v)| vec![u, v]).collect();
        checks.extend([vec![1, 5], vec![3, 6], vec![4, 7]]);
        checks.extend([vec![5, 6, 7], vec![5, 6, 7]]);
        let t = tanner(8, checks);
        let rep = ets_search_in_code(&t, 5, 3).unwrap();
        let hits: Vec<_> = rep.records.iter().filter(|r| (r.a, r.b) == (5, 3)).collect();
        assert!(hits.iter().any(|r| r.vars == [0, 1, 2, 3, 4]));
        let want = Graph::from_edges(5, &edges).unwrap();
        let r = hits.iter().find(|r| r.vars == [0, 1, 2, 3, 4]).unwrap();
        assert!(is_isomorphic(&r.vn_graph, &want));
    }

    #[test]
    fn matches_brute_force_on_random_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let nv = rng.random_range(4..=11);
            let nc = rng.random_range(3..=9);
            let mut checks = vec![Vec::new(); nc];
            for v in 0..nv {
                let mut cs: Vec<usize> = (0..nc).collect();
                for _ in 0..rng.random_range(1..=3.min(nc)) {
                    let i = rng.random_range(0..cs.len());
                    checks[cs.swap_remove(i)].push(v);
                }
            }
            for c in &mut checks {
                c.sort_unstable();
            }
            let t = tanner(nv, checks);
            for (a_max, b_max) in [(4, 2), (6, 3), (nv, nv * 3)] {
                let rep = ets_search_in_code(&t, a_max.min(MAX_ETS_SEARCH), b_max).unwrap();
                let got: BTreeSet<Vec<usize>> = rep.records.iter().map(|r| r.vars.clone()).collect();
                assert_eq!(got, brute(&t, a_max, b_max));
            }
        }
    }

    #[test]
    fn girth8_code_has_no_small_sets() {
        let rep = ets_search(&builtin("C2").unwrap(), 7, 3).unwrap();
        assert!(rep.records.is_empty(), "{:?}", rep.counts);
    }

    #[test]
    fn ceiling() {
        let t = tanner(2, vec![vec![0, 1]]);
        assert!(matches!(ets_search_in_code(&t, 13, 1), Err(Error::ResourceCeiling(_))));
    }
}
