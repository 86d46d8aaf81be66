//! The library checked against slow reference code from `common`.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use oreham::invariants::is_connected;
use oreham::recognizers::join_decomposition;
use oreham::verification::{enumerate_graphs, enumerate_sorted, HypothesisFilter, NOffset};
use oreham::{canonical_form, is_k_vertex_fault_hamiltonian, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn canonical_form_partitions_like_brute_force() {
    for n in 1..=6 {
        let perms = common::permutations(n);
        let m = common::pairs(n).len();
        let mut by_brute: BTreeMap<u64, BTreeSet<Vec<u8>>> = BTreeMap::new();
        let mut by_lib: BTreeMap<Vec<u8>, BTreeSet<u64>> = BTreeMap::new();
        for mask in 0u64..1 << m {
            let g = common::from_mask(n, mask);
            let b = common::brute_canon(&g, &perms);
            let c = canonical_form(&g).unwrap().0;
            by_brute.entry(b).or_default().insert(c.clone());
            by_lib.entry(c).or_default().insert(b);
        }
        assert!(by_brute.values().all(|s| s.len() == 1), "n={n}: split class");
        assert!(by_lib.values().all(|s| s.len() == 1), "n={n}: merged classes");
    }
}

fn sorted_labels(gs: &[Graph]) -> BTreeSet<Vec<u8>> {
    gs.iter().map(|g| canonical_form(g).unwrap().0).collect()
}

fn filters() -> Vec<HypothesisFilter> {
    vec![
        HypothesisFilter::none(),
        HypothesisFilter {
            connected_only: true,
            ..HypothesisFilter::none()
        },
        HypothesisFilter {
            min_sigma2: Some(NOffset(0)),
            ..HypothesisFilter::none()
        },
        HypothesisFilter {
            min_sigma2: Some(NOffset(-2)),
            connected_only: true,
            ..HypothesisFilter::none()
        },
        HypothesisFilter {
            min_sigma2: Some(NOffset(-2)),
            min_kappa: Some(2),
            connected_only: true,
            maximal_non_hamiltonian: true,
        },
        HypothesisFilter {
            min_kappa: Some(3),
            ..HypothesisFilter::none()
        },
    ]
}

#[test]
fn filtered_enumeration_matches_filter_after_generation() {
    for n in 3..=7 {
        for f in filters() {
            let mut got = Vec::new();
            let count = enumerate_graphs(n, &f, |g| got.push(g.clone())).unwrap();
            assert_eq!(count, got.len());
            let labels = sorted_labels(&got);
            assert_eq!(labels.len(), got.len(), "n={n} {f:?}: duplicate class");
            assert!(got.iter().all(|g| f.accepts(g)));
            let expect = common::classes_by_filtering(n, |g| f.accepts(g));
            assert_eq!(labels, expect, "n={n} {f:?}");
        }
    }
}

#[test]
fn golden_count_dense_four_connected_order_seven() {
    // 25 classes, counted independently with networkx
    let f = HypothesisFilter {
        min_sigma2: Some(NOffset(0)),
        min_kappa: Some(4),
        ..HypothesisFilter::none()
    };
    let count = enumerate_graphs(7, &f, |_| {}).unwrap();
    assert_eq!(count, 25);
    let brute = common::classes_by_filtering(7, |g| {
        common::brute_sigma2(g).is_none_or(|s| s >= 7)
            && (g.is_complete() || common::brute_kappa(g) >= 4)
    });
    assert_eq!(brute.len(), 25);
}

#[test]
fn enumeration_is_deterministic_across_worker_counts() {
    let f = HypothesisFilter {
        min_sigma2: Some(NOffset(-2)),
        connected_only: true,
        ..HypothesisFilter::none()
    };
    let one = enumerate_sorted(8, &f, Some(1)).unwrap();
    let four = enumerate_sorted(8, &f, Some(4)).unwrap();
    assert_eq!(one, four);
    let mut serial = Vec::new();
    enumerate_graphs(8, &f, |g| serial.push(g.clone())).unwrap();
    assert_eq!(sorted_labels(&serial), sorted_labels(&one));

    let mut a = Vec::new();
    let mut b = Vec::new();
    enumerate_graphs(7, &f, |g| a.push(g.to_graph6())).unwrap();
    enumerate_graphs(7, &f, |g| b.push(g.to_graph6())).unwrap();
    assert_eq!(a, b);
}

/// All `(A, B)` splits with `0 ∈ A` and at most `max` absent cross pairs,
/// by direct enumeration of vertex subsets.
fn brute_joins(g: &Graph, max: usize) -> BTreeSet<(Vec<usize>, Vec<usize>, Vec<(usize, usize)>)> {
    let n = g.order();
    let mut out = BTreeSet::new();
    for bm in 1u64..1 << n {
        if bm & 1 == 1 {
            continue;
        }
        let a: Vec<usize> = (0..n).filter(|&v| bm >> v & 1 == 0).collect();
        let b: Vec<usize> = (0..n).filter(|&v| bm >> v & 1 == 1).collect();
        let mut missing: Vec<(usize, usize)> = a
            .iter()
            .flat_map(|&x| b.iter().map(move |&y| (x.min(y), x.max(y))))
            .filter(|&(x, y)| !g.has_edge(x, y))
            .collect();
        missing.sort();
        if missing.len() <= max {
            out.insert((a, b, missing));
        }
    }
    out
}

#[test]
fn join_decomposition_matches_subset_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..400 {
        let n = rng.gen_range(2..=8);
        let p = rng.gen_range(0.5..0.95);
        let edges: Vec<_> = common::pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        for max in 0..=2 {
            let got: BTreeSet<_> = join_decomposition(&g, max)
                .into_iter()
                .map(|d| (d.a, d.b, d.missing.iter().copied().collect::<Vec<_>>()))
                .collect();
            assert_eq!(got, brute_joins(&g, max), "{} max={max}", g.to_graph6());
        }
        assert_eq!(
            !join_decomposition(&g, 0).is_empty(),
            !is_connected(&g.complement()),
            "{}",
            g.to_graph6()
        );
    }
}

#[test]
fn fault_tolerance_matches_deletion_by_hand() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..150 {
        let n = rng.gen_range(5..=8);
        let edges: Vec<_> = common::pairs(n).into_iter().filter(|_| rng.gen_bool(0.75)).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        let v = is_k_vertex_fault_hamiltonian(&g, 2).unwrap();
        let mut expect = common::brute_hamiltonian(&g);
        for a in 0..n {
            for b in a..n {
                let keep: Vec<usize> = (0..n).filter(|&x| x != a && x != b).collect();
                expect &= common::brute_hamiltonian(&g.induced_ordered(&keep));
            }
        }
        assert_eq!(v.tolerant, expect, "{}", g.to_graph6());
    }
}
