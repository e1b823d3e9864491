//! Turán numbers of short chorded cycles and of the 4-cycle sharing family.
//!
//! Closed forms are evaluated in integers wherever a floor or square root is
//! involved; `brute_force_ex` is the independent oracle and never consults
//! the closed forms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{enumerate_graphs, make_named, EnumConstraints, Graph, NamedGraph};

pub const DEFAULT_BRUTE_CEILING: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TuranKind {
    Exact,
    UpperBound,
}

#[derive(Clone, Debug, Serialize)]
pub struct TuranResult {
    pub kind: TuranKind,
    pub n: usize,
    /// Real value of the bound; equals `cap` for exact results.
    pub value: f64,
    /// Largest admissible integer edge count.
    pub cap: usize,
    pub extremal: Option<Vec<Graph>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Target {
    G1,
    G2,
    G3,
}

impl Target {
    pub const ALL: [Target; 3] = [Target::G1, Target::G2, Target::G3];

    pub fn graph(self) -> Graph {
        let kind = match self {
            Target::G1 => NamedGraph::G1,
            Target::G2 => NamedGraph::G2,
            Target::G3 => NamedGraph::G3,
        };
        make_named(kind).expect("registry graph")
    }

    pub fn index(self) -> usize {
        self as usize + 1
    }

    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            1 => Ok(Target::G1),
            2 => Ok(Target::G2),
            3 => Ok(Target::G3),
            _ => Err(Error::Parameter(format!("no target G{i}"))),
        }
    }

    /// Closed-form value `f(n)` (no range check).
    pub fn formula(self, n: i64) -> i64 {
        match self {
            Target::G1 => (n * n + n).div_euclid(4),
            Target::G2 => (n * n).div_euclid(4) + 1,
            Target::G3 => (n * n).div_euclid(4) + (n + 1).div_euclid(2) - 1,
        }
    }

    fn min_order(self) -> usize {
        match self {
            Target::G1 => 5,
            Target::G2 | Target::G3 => 6,
        }
    }
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "G{}", self.index())
    }
}

impl std::str::FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "G1" | "1" => Ok(Target::G1),
            "G2" | "2" => Ok(Target::G2),
            "G3" | "3" => Ok(Target::G3),
            _ => Err(Error::Parameter(format!("unknown target `{s}`"))),
        }
    }
}

/// Upper bound on edges of a θ(2,2,2)-free graph: n(√(8n−7)+1)/4.
pub fn theta222_upper(n: usize) -> Result<f64> {
    check_order(n)?;
    let n = n as f64;
    Ok(n * ((8.0 * n - 7.0).sqrt() + 1.0) / 4.0)
}

/// Exact floor of [`theta222_upper`]: largest m with (4m − n)² ≤ n²(8n − 7) or 4m ≤ n.
pub fn theta222_cap(n: usize) -> Result<usize> {
    check_order(n)?;
    let nn = n as i128;
    Ok(largest_m(|m| {
        let l = 4 * m as i128 - nn;
        l <= 0 || l * l <= nn * nn * (8 * nn - 7)
    }))
}

/// Upper bound for graphs free of C3, θ(2,2,2), θ(1,3,3) and D(4,4;0):
/// n(√(24n−23)−1)/8.
pub fn family_upper_th2(n: usize) -> Result<f64> {
    check_order(n)?;
    let n = n as f64;
    Ok(n * ((24.0 * n - 23.0).sqrt() - 1.0) / 8.0)
}

/// Exact floor of [`family_upper_th2`]: largest m with (8m + n)² ≤ n²(24n − 23).
pub fn family_cap_th2(n: usize) -> Result<usize> {
    check_order(n)?;
    let nn = n as i128;
    Ok(largest_m(|m| {
        let l = 8 * m as i128 + nn;
        l * l <= nn * nn * (24 * nn - 23)
    }))
}

fn check_order(n: usize) -> Result<()> {
    if n < 5 {
        return Err(Error::OutOfRange(format!("bound stated for n >= 5, got n = {n}")));
    }
    Ok(())
}

/// Largest m ≥ 0 satisfying a monotone predicate (true up to some point).
fn largest_m(ok: impl Fn(usize) -> bool) -> usize {
    let mut hi = 1usize;
    while ok(hi) {
        hi *= 2;
    }
    let mut lo = 0usize;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// The four graphs whose joint absence is equivalent to pairwise
/// vertex-disjoint 4-cycles in a triangle-free graph, plus C3.
pub fn c4_sharing_family() -> Vec<Graph> {
    vec![
        make_named(NamedGraph::Theta(2, 2, 2)).unwrap(),
        make_named(NamedGraph::Theta(1, 3, 3)).unwrap(),
        make_named(NamedGraph::Dumbbell(4, 4, 0)).unwrap(),
    ]
}

/// C3 together with [`c4_sharing_family`].
pub fn family_h() -> Vec<Graph> {
    let mut f = vec![make_named(NamedGraph::Cycle(3)).unwrap()];
    f.extend(c4_sharing_family());
    f
}

/// Exact Turán number with the extremal graphs where they are characterized.
pub fn ex_exact(target: Target, n: usize) -> Result<TuranResult> {
    if n < target.min_order() {
        return Err(Error::OutOfRange(format!(
            "ex(n, {target}) is known here for n >= {}, got n = {n}",
            target.min_order()
        )));
    }
    // the closed forms for G2 and G3 start at n = 7 and n = 9; the smaller
    // orders are settled separately and differ at n = 6
    let value = match (target, n) {
        (Target::G2, 6) => 11,
        (Target::G3, 6) => 12,
        _ => target.formula(n as i64) as usize,
    };
    let extremal = extremal_graphs(target, n)?;
    Ok(TuranResult { kind: TuranKind::Exact, n, value: value as f64, cap: value, extremal })
}

fn extremal_graphs(target: Target, n: usize) -> Result<Option<Vec<Graph>>> {
    let co = |k: usize| Graph::empty(k);
    let k = |m: usize| make_named(NamedGraph::Complete(m));
    let matching = |t: usize| -> Result<Graph> {
        let mut g = Graph::empty(2 * t)?;
        for i in 0..t {
            g.add_edge(2 * i, 2 * i + 1)?;
        }
        Ok(g)
    };
    let star = |m: usize| make_named(NamedGraph::Star(m));
    let graphs = match target {
        Target::G1 => {
            let t = n / 4;
            match n % 4 {
                0 => vec![matching(t)?.join(&co(2 * t)?)?],
                1 => vec![
                    matching(t)?.join(&co(2 * t + 1)?)?,
                    matching(t)?.disjoint_union(&co(1)?)?.join(&co(2 * t)?)?,
                ],
                2 => vec![
                    matching(t + 1)?.join(&co(2 * t)?)?,
                    matching(t)?.disjoint_union(&co(1)?)?.join(&co(2 * t + 1)?)?,
                ],
                _ => vec![matching(t + 1)?.join(&co(2 * t + 1)?)?],
            }
        }
        Target::G2 => match n {
            6 => vec![make_named(NamedGraph::GPrime)?],
            _ => return Ok(None),
        },
        Target::G3 => match n {
            6 => vec![k(3)?.join(&co(3)?)?],
            7 => vec![
                k(3)?.disjoint_union(&co(1)?)?.join(&co(3)?)?,
                k(3)?.join(&co(4)?)?,
                star(4)?.join(&co(3)?)?,
            ],
            8 => vec![k(3)?.disjoint_union(&co(1)?)?.join(&co(4)?)?, star(4)?.join(&co(4)?)?],
            _ if n % 2 == 0 => vec![star(n / 2)?.join(&co(n / 2)?)?],
            _ => vec![star(n / 2 + 1)?.join(&co(n / 2)?)?],
        },
    };
    Ok(Some(graphs))
}

/// A G2-free graph with ⌊n²/4⌋ + 1 edges: (K2 + K̄_{⌈n/2⌉−2}) ∨ K̄_{⌊n/2⌋}.
pub fn g2_construction(n: usize) -> Result<Graph> {
    if n < 4 {
        return Err(Error::OutOfRange(format!("construction needs n >= 4, got {n}")));
    }
    let k2 = make_named(NamedGraph::Complete(2))?;
    k2.disjoint_union(&Graph::empty(n.div_ceil(2) - 2)?)?.join(&Graph::empty(n / 2)?)
}

/// Induction gap F(n) = (n−1)(f(n+1)+1) − (n+1)f(n) for a candidate bound f.
pub fn induction_gap(f: impl Fn(i64) -> i64, n: i64) -> i64 {
    (n - 1) * (f(n + 1) + 1) - (n + 1) * f(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InductionCase {
    /// F > 0: ex(n+1) ≤ f(n+1).
    Strict,
    /// F ∈ {0, −1}: ex(n+1) ≤ f(n+1) + 1.
    ZeroOrMinusOne,
    Inapplicable,
}

pub fn induction_case(f: impl Fn(i64) -> i64, n: i64) -> InductionCase {
    match induction_gap(f, n) {
        x if x > 0 => InductionCase::Strict,
        0 | -1 => InductionCase::ZeroOrMinusOne,
        _ => InductionCase::Inapplicable,
    }
}

/// Maximum edge count of an n-vertex graph containing no member of `family`,
/// with every extremal class. Searches edge counts from the top down.
pub fn brute_force_ex(family: &[Graph], n: usize) -> Result<TuranResult> {
    brute_force_ex_with_ceiling(family, n, DEFAULT_BRUTE_CEILING)
}

pub fn brute_force_ex_with_ceiling(family: &[Graph], n: usize, ceiling: usize) -> Result<TuranResult> {
    if family.is_empty() {
        return Err(Error::Parameter("forbidden family is empty".into()));
    }
    if n > ceiling {
        return Err(Error::ResourceCeiling(format!(
            "brute-force search at n = {n} exceeds the ceiling {ceiling}"
        )));
    }
    let top = n * n.saturating_sub(1) / 2;
    for m in (0..=top).rev() {
        let mut c = EnumConstraints::default().edges(m).ceiling(ceiling.max(n));
        c.forbidden = family.to_vec();
        let found = enumerate_graphs(n, &c)?;
        if !found.is_empty() {
            return Ok(TuranResult {
                kind: TuranKind::Exact,
                n,
                value: m as f64,
                cap: m,
                extremal: Some(found),
            });
        }
    }
    unreachable!("the empty graph is free of any family with an edge")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{contains_subgraph, is_isomorphic};

    #[test]
    fn bound_values() {
        assert!((theta222_upper(5).unwrap() - 8.4300).abs() < 1e-3);
        assert_eq!(theta222_cap(5).unwrap(), 8);
        assert!((theta222_upper(8).unwrap() - 2.0 * (57f64.sqrt() + 1.0)).abs() < 1e-12);
        assert_eq!(theta222_cap(8).unwrap(), 17);
        assert!((family_upper_th2(10).unwrap() - 17.16).abs() < 1e-2);
        assert_eq!(family_cap_th2(10).unwrap(), 17);
        assert_eq!(family_cap_th2(5).unwrap(), 5);
        assert!(theta222_upper(4).is_err());
    }

    #[test]
    fn caps_match_float_floor_away_from_integers() {
        for n in 5..200usize {
            let t = theta222_upper(n).unwrap();
            let f = family_upper_th2(n).unwrap();
            if (t - t.round()).abs() > 1e-9 {
                assert_eq!(theta222_cap(n).unwrap(), t.floor() as usize, "n = {n}");
            }
            if (f - f.round()).abs() > 1e-9 {
                assert_eq!(family_cap_th2(n).unwrap(), f.floor() as usize, "n = {n}");
            }
        }
        // exact square: 24·8 − 23 = 169
        assert_eq!(family_cap_th2(8).unwrap(), 12);
    }

    #[test]
    fn induction_cases() {
        let f1 = |k: i64| Target::G1.formula(k);
        let f2 = |k: i64| Target::G2.formula(k);
        let f3 = |k: i64| Target::G3.formula(k);
        for k in 5..60i64 {
            let expect1 = match k % 4 {
                0 => -1,
                1 => (k - 1) / 2,
                2 => k - 1,
                _ => (k - 3) / 2,
            };
            assert_eq!(induction_gap(f1, k), expect1, "G1, k = {k}");
            let expect2 = if k % 2 == 0 { k / 2 - 3 } else { k - 3 };
            assert_eq!(induction_gap(f2, k), expect2, "G2, k = {k}");
            let expect3 = if k % 2 == 0 { k / 2 } else { 0 };
            assert_eq!(induction_gap(f3, k), expect3, "G3, k = {k}");
        }
        assert_eq!(induction_case(f1, 8), InductionCase::ZeroOrMinusOne);
        assert_eq!(induction_case(f3, 9), InductionCase::ZeroOrMinusOne);
        assert_eq!(induction_case(f2, 9), InductionCase::Strict);
        assert_eq!(induction_case(|_| 100, 3), InductionCase::Inapplicable);
    }

    #[test]
    fn exact_values_and_ranges() {
        assert_eq!(ex_exact(Target::G1, 6).unwrap().cap, 10);
        assert_eq!(ex_exact(Target::G2, 6).unwrap().cap, 11);
        assert_eq!(ex_exact(Target::G3, 8).unwrap().cap, 19);
        assert_eq!(ex_exact(Target::G3, 10).unwrap().cap, 29);
        assert!(matches!(ex_exact(Target::G1, 4), Err(Error::OutOfRange(_))));
        assert!(matches!(ex_exact(Target::G3, 5), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn listed_extremal_graphs_are_free_and_tight() {
        for t in Target::ALL {
            let g = t.graph();
            for n in t.min_order()..=16 {
                let r = ex_exact(t, n).unwrap();
                for e in r.extremal.iter().flatten() {
                    assert_eq!(e.order(), n);
                    assert_eq!(e.edge_count(), r.cap, "{t} n = {n}");
                    assert!(!contains_subgraph(e, &g), "{t} n = {n}");
                }
                let listed = r.extremal.unwrap_or_default();
                for (i, a) in listed.iter().enumerate() {
                    for b in &listed[i + 1..] {
                        assert!(!is_isomorphic(a, b));
                    }
                }
            }
        }
        for n in 7..16 {
            let g = g2_construction(n).unwrap();
            assert_eq!(g.edge_count() as i64, Target::G2.formula(n as i64));
            assert!(!contains_subgraph(&g, &Target::G2.graph()));
        }
    }

    #[test]
    fn brute_force_small() {
        let r = brute_force_ex(&[Target::G2.graph()], 6).unwrap();
        assert_eq!(r.cap, 11);
        let ext = r.extremal.unwrap();
        assert_eq!(ext.len(), 1);
        assert!(is_isomorphic(&ext[0], &make_named(NamedGraph::GPrime).unwrap()));
        let tri = brute_force_ex(&[make_named(NamedGraph::Cycle(3)).unwrap()], 6).unwrap();
        assert_eq!(tri.cap, 9);
        assert!(matches!(brute_force_ex(&[Target::G1.graph()], 9), Err(Error::ResourceCeiling(_))));
    }
}
