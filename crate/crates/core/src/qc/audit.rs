//! Structural audits: pairs of 8-cycles sharing variable nodes, and
//! embeddings of the chorded-cycle Tanner patterns.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::cycles::{canonical_cycle, enumerate_cycles_in, shift_cycle};
use super::{CycleWitness, ExponentMatrix, TannerGraph};
use crate::error::{Error, Result};
use crate::ets::TVariant;
use crate::graph::{contains_subgraph, make_named, registry, Graph, NamedGraph, TannerPattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SharedPattern {
    Theta222,
    Theta133,
    Dumbbell440,
    /// Union VN graph contains none of the three (possible only with short cycles).
    Other,
}

#[derive(Clone, Debug, Serialize)]
pub struct SharedWitness {
    pub first: CycleWitness,
    pub second: CycleWitness,
    pub shared_vars: Vec<usize>,
    pub shared_checks: Vec<usize>,
    pub pattern: SharedPattern,
    /// Distinct pairs in the shift orbit of this pair.
    pub orbit_size: usize,
}

fn require_regular(t: &TannerGraph) -> Result<usize> {
    t.variable_degree()
        .ok_or_else(|| Error::Unsupported("audits require a variable-regular code".into()))
}

/// Every pair of distinct 8-cycles sharing at least one variable node, one
/// witness per shift orbit of pairs. Empty iff 8-cycles are variable-disjoint.
pub fn detect_shared_8cycles(e: &ExponentMatrix) -> Result<Vec<SharedWitness>> {
    let t = e.tanner();
    require_regular(&t)?;
    detect_shared_8cycles_in(&t)
}

pub(crate) fn detect_shared_8cycles_in(t: &TannerGraph) -> Result<Vec<SharedWitness>> {
    let report = enumerate_cycles_in(t, 8)?;
    let reps: Vec<&CycleWitness> = report.orbits.iter().filter(|w| w.len() == 8).collect();
    if reps.is_empty() {
        return Ok(Vec::new());
    }
    let p = t.qc.map_or(1, |q| q.p);
    // every 8-cycle, as (vars, checks)
    let mut all: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut seen = HashSet::new();
    let mut rep_index = Vec::new();
    for w in &reps {
        rep_index.push(all.len());
        for k in 0..p {
            let c = shift_cycle(t, &w.vars, &w.checks, k);
            if seen.insert(cycle_key(&c)) {
                all.push(c);
            }
        }
    }
    let mut by_var: HashMap<usize, Vec<usize>> = HashMap::new();
    for (idx, (vs, _)) in all.iter().enumerate() {
        for &v in vs {
            by_var.entry(v).or_default().push(idx);
        }
    }
    // pairs with the first cycle an orbit representative
    let mut keys = HashSet::new();
    let mut out = Vec::new();
    for &ri in &rep_index {
        let (rv, rc) = &all[ri];
        let mut partners = BTreeSet::new();
        for v in rv {
            for &o in &by_var[v] {
                if o != ri {
                    partners.insert(o);
                }
            }
        }
        for o in partners {
            let (ov, oc) = &all[o];
            let key = pair_key(t, (rv, rc), (ov, oc));
            if !keys.insert(key.clone()) {
                continue;
            }
            let stab = (0..p)
                .filter(|&k| {
                    let a = shift_cycle(t, rv, rc, k);
                    let b = shift_cycle(t, ov, oc, k);
                    unordered(cycle_key(&a), cycle_key(&b)) == unordered(cycle_key(&(rv.clone(), rc.clone())), cycle_key(&(ov.clone(), oc.clone())))
                })
                .count();
            out.push(SharedWitness {
                first: witness(rv, rc),
                second: witness(ov, oc),
                shared_vars: intersect(rv, ov),
                shared_checks: intersect(rc, oc),
                pattern: classify_pair(t, (rv, rc), (ov, oc)),
                orbit_size: p / stab,
            });
        }
    }
    out.sort_by(|a, b| (a.pattern, &a.first, &a.second).cmp(&(b.pattern, &b.first, &b.second)));
    Ok(out)
}

type CycleKey = (Vec<usize>, Vec<usize>);

fn cycle_key(c: &(Vec<usize>, Vec<usize>)) -> CycleKey {
    canonical_cycle(&c.0, &c.1)
}

fn unordered(a: CycleKey, b: CycleKey) -> (CycleKey, CycleKey) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn pair_key(t: &TannerGraph, a: (&Vec<usize>, &Vec<usize>), b: (&Vec<usize>, &Vec<usize>)) -> (CycleKey, CycleKey) {
    let p = t.qc.map_or(1, |q| q.p);
    (0..p)
        .map(|k| unordered(cycle_key(&shift_cycle(t, a.0, a.1, k)), cycle_key(&shift_cycle(t, b.0, b.1, k))))
        .min()
        .unwrap()
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut s: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
    s.sort_unstable();
    s
}

fn witness(vars: &[usize], checks: &[usize]) -> CycleWitness {
    CycleWitness { vars: vars.to_vec(), checks: checks.to_vec(), blocks: Vec::new(), orbit_size: 1 }
}

/// Tags a pair by the first of θ(2,2,2), θ(1,3,3), D(4,4;0) that its union
/// VN graph contains.
fn classify_pair(
    _t: &TannerGraph,
    a: (&Vec<usize>, &Vec<usize>),
    b: (&Vec<usize>, &Vec<usize>),
) -> SharedPattern {
    let mut vars: Vec<usize> = a.0.iter().chain(b.0).copied().collect();
    vars.sort_unstable();
    vars.dedup();
    let idx = |v: usize| vars.binary_search(&v).unwrap();
    let mut g = Graph::empty(vars.len()).expect("small");
    for (vs, _) in [a, b] {
        let k = vs.len();
        for i in 0..k {
            let (x, y) = (idx(vs[i]), idx(vs[(i + 1) % k]));
            if x != y && !g.has_edge(x, y) {
                g.add_edge(x, y).unwrap();
            }
        }
    }
    let shapes = [
        (NamedGraph::Theta(2, 2, 2), SharedPattern::Theta222),
        (NamedGraph::Theta(1, 3, 3), SharedPattern::Theta133),
        (NamedGraph::Dumbbell(4, 4, 0), SharedPattern::Dumbbell440),
    ];
    for (shape, tag) in shapes {
        if contains_subgraph(&g, &make_named(shape).unwrap()) {
            return tag;
        }
    }
    SharedPattern::Other
}

/// An embedding of a Tanner pattern: images of its variables and checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TWitness {
    pub vars: Vec<usize>,
    pub checks: Vec<usize>,
    pub orbit_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TAudit {
    pub variant: String,
    pub witnesses: Vec<TWitness>,
    pub raw_count: usize,
}

/// All embeddings (distinct images, one per shift orbit) of the pattern
/// `T_i` in the lifted code.
pub fn detect_t(e: &ExponentMatrix, variant: TVariant) -> Result<TAudit> {
    let t = e.tanner();
    require_regular(&t)?;
    let pattern = registry().pattern(variant.index())?;
    let witnesses = detect_t_in(&t, pattern);
    let raw_count = witnesses.iter().map(|w| w.orbit_size).sum();
    Ok(TAudit { variant: variant.to_string(), witnesses, raw_count })
}

/// Pattern embeddings into an arbitrary Tanner graph. Distinct pattern
/// variables and checks map to distinct nodes; adjacency is preserved.
pub fn detect_t_in(t: &TannerGraph, pattern: &TannerPattern) -> Vec<TWitness> {
    let vn = pattern.vn_graph();
    let checks = pattern.check_lists();
    let a = pattern.variables;
    // variable order: start at a max-degree vertex, then by connections to placed ones
    let start = (0..a).max_by_key(|&v| (vn.degree(v), std::cmp::Reverse(v))).unwrap_or(0);
    let mut order = vec![start];
    while order.len() < a {
        let next = (0..a)
            .filter(|v| !order.contains(v))
            .max_by_key(|&v| (order.iter().filter(|&&u| vn.has_edge(u, v)).count(), vn.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        order.push(next);
    }
    // for each position, pattern checks joining the new variable to earlier ones
    let back: Vec<Vec<(usize, usize)>> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            checks
                .iter()
                .enumerate()
                .filter_map(|(ci, nb)| {
                    let [x, y] = nb[..] else { return None };
                    let other = if x == v { y } else if y == v { x } else { return None };
                    order[..i].contains(&other).then_some((ci, other))
                })
                .collect()
        })
        .collect();
    let roots = t.orbit_roots();
    let found: Vec<(Vec<usize>, Vec<usize>)> = roots
        .par_iter()
        .flat_map_iter(|&r| {
            let mut s = Embed {
                t,
                order: &order,
                back: &back,
                vmap: vec![usize::MAX; a],
                cmap: vec![usize::MAX; checks.len()],
                out: Vec::new(),
            };
            s.vmap[order[0]] = r;
            s.extend(1);
            s.out
        })
        .collect();
    let p = t.qc.map_or(1, |q| q.p);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (vm, cm) in found {
        let image = |k: usize| {
            let v: Vec<usize> = vm.iter().map(|&x| t.shift_var(x, k)).collect();
            let c: Vec<usize> = cm.iter().map(|&x| t.shift_check(x, k)).collect();
            (sorted(&v), sorted(&c))
        };
        let key = (0..p).map(image).min().unwrap();
        if seen.insert(key) {
            let base = image(0);
            let stab = (0..p).filter(|&k| image(k) == base).count();
            out.push(TWitness { vars: vm, checks: cm, orbit_size: p / stab });
        }
    }
    out.sort_by(|x, y| (&x.vars, &x.checks).cmp(&(&y.vars, &y.checks)));
    out
}

struct Embed<'a> {
    t: &'a TannerGraph,
    order: &'a [usize],
    back: &'a [Vec<(usize, usize)>],
    vmap: Vec<usize>,
    cmap: Vec<usize>,
    out: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Embed<'_> {
    fn extend(&mut self, pos: usize) {
        if pos == self.order.len() {
            self.out.push((self.vmap.clone(), self.cmap.clone()));
            return;
        }
        let v = self.order[pos];
        let back = &self.back[pos];
        if back.is_empty() {
            // disconnected pattern part: try every variable
            for w in 0..self.t.num_vars() {
                if !self.vmap.contains(&w) {
                    self.vmap[v] = w;
                    self.extend(pos + 1);
                }
            }
            self.vmap[v] = usize::MAX;
            return;
        }
        let (c0, x0) = back[0];
        let anchor = self.vmap[x0];
        for &c in &self.t.var_adj[anchor] {
            if self.cmap.contains(&c) {
                continue;
            }
            for &w in &self.t.chk_adj[c] {
                if w == anchor || self.vmap.contains(&w) {
                    continue;
                }
                self.vmap[v] = w;
                self.cmap[c0] = c;
                self.assign_rest(pos, 1);
                self.cmap[c0] = usize::MAX;
            }
        }
        self.vmap[v] = usize::MAX;
    }

    /// Assigns checks for the remaining back-edges of position `pos`.
    fn assign_rest(&mut self, pos: usize, k: usize) {
        let back = &self.back[pos];
        if k == back.len() {
            self.extend(pos + 1);
            return;
        }
        let (ci, x) = back[k];
        let w = self.vmap[self.order[pos]];
        let u = self.vmap[x];
        for &c in &self.t.var_adj[w] {
            if self.cmap.contains(&c) || !self.t.var_adj[u].contains(&c) {
                continue;
            }
            self.cmap[ci] = c;
            self.assign_rest(pos, k + 1);
            self.cmap[ci] = usize::MAX;
        }
    }
}

/// The pattern lifted into a standalone Tanner graph (for self-detection).
pub fn pattern_tanner(pattern: &TannerPattern) -> TannerGraph {
    let mut var_adj = vec![Vec::new(); pattern.variables];
    let chk_adj = pattern.check_lists();
    for (c, nb) in chk_adj.iter().enumerate() {
        for &v in nb {
            var_adj[v].push(c);
        }
    }
    TannerGraph { var_adj, chk_adj, qc: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qc::builtin;

    #[test]
    fn c1_t_witnesses_are_genuine() {
        let e = builtin("C1").unwrap();
        let t = e.tanner();
        for v in TVariant::ALL {
            let pat = registry().pattern(v.index()).unwrap();
            let audit = detect_t(&e, v).unwrap();
            assert_eq!(audit.raw_count, audit.witnesses.iter().map(|w| w.orbit_size).sum::<usize>());
            for w in &audit.witnesses {
                assert_eq!(sorted(&w.vars).windows(2).filter(|p| p[0] == p[1]).count(), 0);
                assert_eq!(sorted(&w.checks).windows(2).filter(|p| p[0] == p[1]).count(), 0);
                for (ci, nb) in pat.check_lists().iter().enumerate() {
                    for &pv in nb {
                        assert!(t.chk_adj[w.checks[ci]].contains(&w.vars[pv]), "{v}");
                    }
                }
            }
        }
    }

    #[test]
    fn shared_witnesses_are_genuine() {
        let e = builtin("C2").unwrap();
        let t = e.tanner();
        let raw = crate::qc::enumerate_cycles(&e, 8).unwrap().raw_count;
        let w = detect_shared_8cycles(&e).unwrap();
        // four variables per 8-cycle: more than nv/4 cycles forces an overlap
        assert_eq!(w.is_empty(), 4 * raw <= t.num_vars());
        for x in w.iter().take(200) {
            for c in [&x.first, &x.second] {
                assert_eq!(c.len(), 8);
                for i in 0..4 {
                    let ch = &t.chk_adj[c.checks[i]];
                    assert!(ch.contains(&c.vars[i]) && ch.contains(&c.vars[(i + 1) % 4]));
                }
            }
            assert_ne!(cycle_key(&(x.first.vars.clone(), x.first.checks.clone())), cycle_key(&(x.second.vars.clone(), x.second.checks.clone())));
            assert!(!x.shared_vars.is_empty());
        }
    }

    #[test]
    fn all_zero_code_has_overlapping_8cycles() {
        let e = ExponentMatrix::parse("4 4 5\n0 0 0 0\n0 0 0 0\n0 0 0 0\n0 0 0 0\n").unwrap();
        let w = detect_shared_8cycles(&e).unwrap();
        assert!(!w.is_empty());
        for x in &w {
            assert!(!x.shared_vars.is_empty());
        }
    }

    #[test]
    fn patterns_detect_themselves() {
        for i in 1..=3 {
            let p = registry().pattern(i).unwrap();
            let t = pattern_tanner(p);
            let found = detect_t_in(&t, p);
            assert_eq!(found.len(), 1, "T{i}");
            assert_eq!(sorted(&found[0].vars), (0..p.variables).collect::<Vec<_>>());
        }
    }

    #[test]
    fn tree_has_no_pattern() {
        // a path of variables joined by degree-2 checks
        let t = TannerGraph {
            var_adj: vec![vec![0], vec![0, 1], vec![1, 2], vec![2]],
            chk_adj: vec![vec![0, 1], vec![1, 2], vec![2, 3]],
            qc: None,
        };
        for i in 1..=3 {
            assert!(detect_t_in(&t, registry().pattern(i).unwrap()).is_empty());
        }
    }

    #[test]
    fn witnesses_are_embeddings() {
        // G1 needs a degree-4 variable; plant T1 inside a larger graph
        let p = registry().pattern(1).unwrap();
        let mut t = pattern_tanner(p);
        for c in &mut t.chk_adj {
            c.iter_mut().for_each(|v| *v += 2);
        }
        t.var_adj.insert(0, vec![]);
        t.var_adj.insert(0, vec![]);
        for w in detect_t_in(&t, p) {
            for (ci, nb) in p.check_lists().iter().enumerate() {
                for &pv in nb {
                    assert!(t.chk_adj[w.checks[ci]].contains(&w.vars[pv]));
                }
            }
        }
    }
}
