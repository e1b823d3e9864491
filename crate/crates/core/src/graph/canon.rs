//! Canonical labeling by partition refinement and individualization.
//!
//! The search tree individualizes vertices of the first non-singleton cell of
//! an equitable partition. Leaves are compared by their relabeled adjacency
//! rows; the lexicographically largest leaf is the canonical one. Leaves that
//! reproduce the first or the best certificate yield automorphisms, which are
//! used to skip siblings in the same orbit of the pointwise path stabilizer.

use std::fmt;

use super::{bit, iter_bits, Graph};

/// Byte string that is equal for two graphs iff they are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

/// Result of a canonical labeling run.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `perm[v]` is the canonical position of vertex `v`.
    pub perm: Vec<usize>,
    pub form: CanonicalForm,
    /// Automorphisms found during the search (as vertex maps).
    pub generators: Vec<Vec<usize>>,
}

impl Labeling {
    /// Orbit representative (smallest vertex) for every vertex under the
    /// group generated by the recorded automorphisms.
    pub fn orbits(&self) -> Vec<usize> {
        let n = self.perm.len();
        let mut uf = UnionFind::new(n);
        for g in &self.generators {
            for v in 0..n {
                uf.union(v, g[v]);
            }
        }
        (0..n).map(|v| uf.min_of(v)).collect()
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order()
        && g.edge_count() == h.edge_count()
        && g.degree_sequence() == h.degree_sequence()
        && canonical_form(g) == canonical_form(h)
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    let n = g.order();
    let mut cells: Vec<Vec<usize>> = initial_partition(g);
    refine(g, &mut cells);
    let mut search = Search {
        g,
        first: None,
        best: None,
        generators: Vec::new(),
        path: Vec::new(),
    };
    search.descend(cells);
    let (cert, perm) = search.best.expect("search visits at least one leaf");
    Labeling {
        perm,
        form: encode(n, &cert),
        generators: search.generators,
    }
}

fn encode(n: usize, rows: &[u64]) -> CanonicalForm {
    let mut bytes = Vec::with_capacity(1 + n * n / 16 + 1);
    bytes.push(n as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            acc = (acc << 1) | u8::from(rows[i] & bit(j) != 0);
            filled += 1;
            if filled == 8 {
                bytes.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push(acc << (8 - filled));
    }
    CanonicalForm(bytes)
}

fn initial_partition(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let maxd = g.max_degree();
    let mut by_deg: Vec<Vec<usize>> = vec![Vec::new(); maxd + 1];
    for v in 0..n {
        by_deg[g.degree(v)].push(v);
    }
    by_deg.into_iter().filter(|c| !c.is_empty()).collect()
}

/// Refines `cells` to the coarsest equitable partition finer than it.
/// Split order depends only on cell positions and neighbor counts, so the
/// procedure commutes with relabeling.
fn refine(g: &Graph, cells: &mut Vec<Vec<usize>>) {
    let mut changed = true;
    while changed {
        changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter: u64 = cells[s].iter().fold(0, |m, &v| m | bit(v));
            let mut i = 0;
            while i < cells.len() {
                if cells[i].len() > 1 {
                    let mut keyed: Vec<(u32, usize)> = cells[i]
                        .iter()
                        .map(|&v| ((g.row(v) & splitter).count_ones(), v))
                        .collect();
                    let first = keyed[0].0;
                    if keyed.iter().any(|&(k, _)| k != first) {
                        keyed.sort_unstable();
                        let mut parts: Vec<Vec<usize>> = Vec::new();
                        let mut last = u32::MAX;
                        for (k, v) in keyed {
                            if k != last {
                                parts.push(Vec::new());
                                last = k;
                            }
                            parts.last_mut().unwrap().push(v);
                        }
                        let added = parts.len() - 1;
                        cells.splice(i..=i, parts);
                        i += added;
                        changed = true;
                    }
                }
                i += 1;
            }
            s += 1;
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<(Vec<u64>, Vec<usize>)>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
    path: Vec<usize>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<Vec<usize>>) {
        let n = self.g.order();
        if cells.len() == n {
            self.leaf(&cells);
            return;
        }
        let target = cells.iter().position(|c| c.len() > 1).expect("non-discrete partition");
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &candidates {
            if !tried.is_empty() && self.equivalent_to_tried(v, &tried) {
                continue;
            }
            tried.push(v);
            let mut child = cells.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&w| w != v).collect();
            child.splice(target..=target, [vec![v], rest]);
            refine(self.g, &mut child);
            self.path.push(v);
            self.descend(child);
            self.path.pop();
        }
    }

    /// True when some recorded automorphism fixing the current path maps a
    /// tried sibling onto `v`.
    fn equivalent_to_tried(&self, v: usize, tried: &[usize]) -> bool {
        let n = self.g.order();
        let mut uf = UnionFind::new(n);
        let mut any = false;
        for gen in &self.generators {
            if self.path.iter().all(|&p| gen[p] == p) {
                any = true;
                for x in 0..n {
                    uf.union(x, gen[x]);
                }
            }
        }
        any && tried.iter().any(|&t| uf.find(t) == uf.find(v))
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let n = self.g.order();
        let mut perm = vec![0usize; n];
        for (pos, c) in cells.iter().enumerate() {
            perm[c[0]] = pos;
        }
        let mut cert = vec![0u64; n];
        for v in 0..n {
            let mut row = 0u64;
            for w in iter_bits(self.g.row(v)) {
                row |= bit(perm[w]);
            }
            cert[perm[v]] = row;
        }
        let Some((first_cert, first_perm)) = &self.first else {
            self.first = Some((cert.clone(), perm.clone()));
            self.best = Some((cert, perm));
            return;
        };
        if &cert == first_cert {
            self.record_automorphism(first_perm.clone(), &perm);
            return;
        }
        let (best_cert, best_perm) = self.best.as_ref().unwrap();
        match cert.cmp(best_cert) {
            std::cmp::Ordering::Greater => self.best = Some((cert, perm)),
            std::cmp::Ordering::Equal => {
                let bp = best_perm.clone();
                self.record_automorphism(bp, &perm);
            }
            std::cmp::Ordering::Less => {}
        }
    }

    /// Both labelings produce the same graph, so `reference⁻¹ ∘ perm` is an
    /// automorphism.
    fn record_automorphism(&mut self, reference: Vec<usize>, perm: &[usize]) {
        let n = perm.len();
        let mut inv = vec![0usize; n];
        for (v, &p) in reference.iter().enumerate() {
            inv[p] = v;
        }
        let auto: Vec<usize> = (0..n).map(|v| inv[perm[v]]).collect();
        if auto.iter().enumerate().any(|(i, &x)| i != x) && !self.generators.contains(&auto) {
            self.generators.push(auto);
        }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn min_of(&mut self, x: usize) -> usize {
        self.find(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn relabeled_cycle_has_same_form() {
        let c5 = cycle(5);
        let r = c5.relabel(&[3, 0, 4, 1, 2]).unwrap();
        assert_eq!(canonical_form(&c5), canonical_form(&r));
    }

    #[test]
    fn k33_and_prism_differ() {
        let k33 = Graph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        let prism = Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        assert!(!is_isomorphic(&k33, &prism));
        assert_eq!(canonical_labeling(&k33).orbits(), vec![0; 6]);
    }

    #[test]
    fn canonical_permutation_reproduces_form() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)]).unwrap();
        let lab = canonical_labeling(&g);
        let relabeled = g.permuted(&lab.perm);
        assert_eq!(canonical_form(&relabeled), lab.form);
        let again = canonical_labeling(&relabeled);
        assert_eq!(relabeled.permuted(&again.perm), relabeled);
    }

    #[test]
    fn petersen_automorphisms_are_transitive() {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        let g = Graph::from_edges(10, &e).unwrap();
        assert_eq!(canonical_labeling(&g).orbits(), vec![0; 10]);
    }
}
