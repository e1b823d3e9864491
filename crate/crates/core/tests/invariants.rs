mod common;

use proptest::prelude::*;
use trapset::ets::{build_system_matrix, spectral_radius, vn_spectral_radius};
use trapset::graph::{canonical_form, enumerate_graphs, is_isomorphic, EnumConstraints};
use trapset::qc::{builtin, girth_bfs, girth_qc, ExponentMatrix};
use trapset::Graph;

use common::dense_rho;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let k = pairs.len();
        proptest::collection::vec(any::<bool>(), k).prop_map(move |mask| {
            let e: Vec<_> = pairs.iter().zip(&mask).filter(|(_, &b)| b).map(|(p, _)| *p).collect();
            Graph::from_edges(n, &e).unwrap()
        })
    })
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let e: Vec<_> = g.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edges(g.order(), &e).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_ignores_labels(g in graph_strategy(9), seed in any::<u64>()) {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = relabel(&g, &perm);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(is_isomorphic(&g, &h));
    }

    #[test]
    fn adding_an_edge_changes_the_form(g in graph_strategy(8)) {
        let n = g.order();
        if let Some((u, v)) = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).find(|&(u, v)| !g.has_edge(u, v)) {
            let mut h = g.clone();
            h.add_edge(u, v).unwrap();
            prop_assert_ne!(canonical_form(&g), canonical_form(&h));
        }
    }

    #[test]
    fn qc_girth_agrees_with_bfs(p in 5usize..14, seed in any::<u64>()) {
        let mut s = seed;
        let entries: Vec<Vec<Option<usize>>> = (0..3)
            .map(|_| {
                (0..4)
                    .map(|_| {
                        s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                        Some((s >> 40) as usize % p)
                    })
                    .collect()
            })
            .collect();
        let e = ExponentMatrix::new(p, entries).unwrap();
        let walk = girth_qc(&e);
        let bfs = girth_bfs(&e.tanner()).filter(|&g| g <= 12);
        prop_assert_eq!(walk, bfs);
    }
}

#[test]
fn canonical_form_stable_over_many_relabelings() {
    let c = EnumConstraints::default().edges(9).min_degree(2).connected();
    let gs = enumerate_graphs(7, &c).unwrap();
    let g = &gs[gs.len() / 2];
    let want = canonical_form(g);
    let mut perm: Vec<usize> = (0..7).collect();
    let mut s: u64 = 7;
    for _ in 0..1000 {
        for i in (1..7).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        assert_eq!(canonical_form(&relabel(g, &perm)), want);
    }
}

#[test]
fn enumeration_yields_pairwise_distinct_classes() {
    let c = EnumConstraints::default().edges(8).min_degree(2).connected();
    let gs = enumerate_graphs(7, &c).unwrap();
    for (i, g) in gs.iter().enumerate() {
        assert!(g.is_connected() && g.min_degree() >= 2 && g.edge_count() == 8);
        for h in &gs[i + 1..] {
            assert!(!is_isomorphic(g, h));
        }
    }
}

#[test]
fn spectral_radius_oracle() {
    // ETS system matrix against a dense eigen-decomposition
    let c = EnumConstraints::default().edges(9).min_degree(2).connected();
    for g in enumerate_graphs(7, &c).unwrap() {
        let want = dense_rho(&g);
        assert!((vn_spectral_radius(&g).unwrap() - want).abs() < 1e-8);
        assert!((spectral_radius(&build_system_matrix(&g).unwrap()).unwrap() - want).abs() < 1e-8);
    }
}

#[test]
fn builtin_codes_have_expected_girth() {
    assert_eq!(girth_qc(&builtin("C1").unwrap()), Some(6));
    assert_eq!(girth_qc(&builtin("C2").unwrap()), Some(8));
}
