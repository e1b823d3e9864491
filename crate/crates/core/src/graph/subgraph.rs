//! Subgraph (monomorphism) search: injective vertex maps preserving edges of
//! the pattern, not necessarily induced.

use super::{bit, iter_bits, Graph};

/// True iff `host` has a subgraph isomorphic to `pattern`.
pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> bool {
    find_embedding(host, pattern).is_some()
}

/// Returns `map` with `map[p]` the host vertex assigned to pattern vertex `p`.
pub fn find_embedding(host: &Graph, pattern: &Graph) -> Option<Vec<usize>> {
    if !quick_feasible(host, pattern) {
        return None;
    }
    let order = search_order(pattern, None);
    let mut m = Matcher::new(host, pattern, &order);
    m.run(None).then(|| m.into_map())
}

/// Like [`find_embedding`] but the embedding must use host vertex `v`.
///
/// Used by incremental checks where the host minus `v` is already known to be
/// pattern-free.
pub fn find_embedding_through(host: &Graph, pattern: &Graph, v: usize) -> Option<Vec<usize>> {
    if !quick_feasible(host, pattern) || pattern.order() == 0 {
        return None;
    }
    let dv = host.degree(v);
    for p in 0..pattern.order() {
        if pattern.degree(p) > dv {
            continue;
        }
        // Pattern vertices with identical neighborhoods are interchangeable.
        if pattern_twin_earlier(pattern, p) {
            continue;
        }
        let order = search_order(pattern, Some(p));
        let mut m = Matcher::new(host, pattern, &order);
        if m.run(Some(v)) {
            return Some(m.into_map());
        }
    }
    None
}

fn pattern_twin_earlier(pattern: &Graph, p: usize) -> bool {
    (0..p).any(|q| {
        let mask = !(bit(p) | bit(q));
        pattern.row(q) & mask == pattern.row(p) & mask
    })
}

fn quick_feasible(host: &Graph, pattern: &Graph) -> bool {
    if pattern.order() > host.order() || pattern.edge_count() > host.edge_count() {
        return false;
    }
    // Degree domination: the i-th largest pattern degree must not exceed the
    // i-th largest host degree.
    let hd = host.degree_sequence().degrees;
    let pd = pattern.degree_sequence().degrees;
    hd.iter().rev().zip(pd.iter().rev()).all(|(h, p)| h >= p)
}

/// Pattern vertices ordered so that each (after the first of its component)
/// is adjacent to an earlier one, preferring high degree.
fn search_order(pattern: &Graph, start: Option<usize>) -> Vec<usize> {
    let k = pattern.order();
    let mut order = Vec::with_capacity(k);
    let mut placed = 0u64;
    if let Some(s) = start {
        order.push(s);
        placed |= bit(s);
    }
    while order.len() < k {
        let frontier: u64 = order.iter().fold(0, |m, &p| m | pattern.row(p)) & !placed;
        let pool = if frontier != 0 { frontier } else { pattern.vertex_mask() & !placed };
        let next = iter_bits(pool)
            .max_by_key(|&p| ((pattern.row(p) & placed).count_ones(), pattern.degree(p), std::cmp::Reverse(p)))
            .unwrap();
        order.push(next);
        placed |= bit(next);
    }
    order
}

struct Matcher<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: &'a [usize],
    /// For position i, pattern neighbors among earlier positions.
    back: Vec<Vec<usize>>,
    map: Vec<usize>,
}

impl<'a> Matcher<'a> {
    fn new(host: &'a Graph, pattern: &'a Graph, order: &'a [usize]) -> Self {
        let mut pos = vec![0usize; pattern.order()];
        for (i, &p) in order.iter().enumerate() {
            pos[p] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &p)| pattern.neighbors(p).filter(|&q| pos[q] < i).collect())
            .collect();
        Matcher { host, pattern, order, back, map: vec![usize::MAX; pattern.order()] }
    }

    fn run(&mut self, pin_first: Option<usize>) -> bool {
        self.extend(0, 0, pin_first)
    }

    fn extend(&mut self, depth: usize, used: u64, pin: Option<usize>) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        let need = self.pattern.degree(p);
        let mut cand = self.host.vertex_mask() & !used;
        for &q in &self.back[depth] {
            cand &= self.host.row(self.map[q]);
        }
        if depth == 0 {
            if let Some(v) = pin {
                cand &= bit(v);
            }
        }
        for h in iter_bits(cand) {
            if self.host.degree(h) < need {
                continue;
            }
            self.map[p] = h;
            if self.extend(depth + 1, used | bit(h), None) {
                return true;
            }
        }
        self.map[p] = usize::MAX;
        false
    }

    fn into_map(self) -> Vec<usize> {
        self.map
    }
}
