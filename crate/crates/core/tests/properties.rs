mod common;

use brouwer_core::brouwer::{
    check_graph, complement_identity_residual, join_identity_residual, TolerancePolicy,
};
use brouwer_core::corpus::{threshold_from_steps, ThresholdStep};
use brouwer_core::graph::{parse_graph6, write_graph6, Graph};
use brouwer_core::signed::{shift_decomposition, signed_laplacian, signed_spectrum, SignedGraph};
use brouwer_core::spectral::{
    adjacency_kyfan_bounds, adjacency_spectrum, ky_fan, laplacian, laplacian_spectrum,
};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            Graph::from_fn(n, |_, _| it.next().unwrap()).unwrap()
        })
    })
}

fn signed(max_n: usize) -> impl Strategy<Value = SignedGraph> {
    graph(max_n).prop_flat_map(|g| {
        let m = g.m();
        prop::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], m)
            .prop_map(move |s| SignedGraph::new(g.clone(), s).unwrap())
    })
}

fn sorted_close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_round_trip(g in graph(100)) {
        let text = write_graph6(&g);
        prop_assert_eq!(parse_graph6(text.as_bytes()).unwrap(), g);
    }

    #[test]
    fn complement_is_an_involution(g in graph(40)) {
        let c = g.complement();
        prop_assert_eq!(c.complement(), g.clone());
        prop_assert_eq!(g.m() + c.m(), g.n() * (g.n() - 1) / 2);
    }

    #[test]
    fn trace_identities(g in graph(24)) {
        let s = laplacian_spectrum(&g).unwrap();
        let l = laplacian(&g);
        let scale = 1e-9 * g.n() as f64 * l.max_abs().max(1.0);
        let sum: f64 = s.values.iter().sum();
        let sq: f64 = s.values.iter().map(|x| x * x).sum();
        prop_assert!((sum - l.trace()).abs() <= scale);
        prop_assert!((sq - l.trace_of_square()).abs() <= scale * l.max_abs().max(1.0));
        prop_assert!(s.values.iter().all(|&x| x >= -1e-9));
        prop_assert!(s.values[g.n() - 1].abs() <= 1e-9);
    }

    #[test]
    fn union_spectrum_is_the_multiset_union(g in graph(12), h in graph(12)) {
        let u = laplacian_spectrum(&g.disjoint_union(&h).unwrap()).unwrap();
        let mut want = laplacian_spectrum(&g).unwrap().values;
        want.extend(laplacian_spectrum(&h).unwrap().values);
        want.sort_by(|a, b| b.total_cmp(a));
        prop_assert!(sorted_close(&u.values, &want, 1e-9));
    }

    #[test]
    fn join_spectrum(g in graph(16)) {
        let n = g.n();
        let j = laplacian_spectrum(&g.join_one().unwrap()).unwrap();
        let s = laplacian_spectrum(&g).unwrap();
        let mut want = vec![(n + 1) as f64];
        want.extend(s.values[..n - 1].iter().map(|x| x + 1.0));
        want.push(0.0);
        want.sort_by(|a, b| b.total_cmp(a));
        prop_assert!(sorted_close(&j.values, &want, 1e-9));
    }

    #[test]
    fn ky_fan_adjacency_bounds(g in graph(10)) {
        let a = adjacency_spectrum(&g).unwrap();
        for k in 1..=g.n() {
            let (b1, b2) = adjacency_kyfan_bounds(&g, k).unwrap();
            let norm = ky_fan(&a, k).unwrap();
            prop_assert!(norm <= b1 + 1e-9 && norm <= b2 + 1e-9);
        }
    }

    #[test]
    fn spectral_identities(g in graph(20)) {
        let n = g.n();
        if n >= 3 {
            for k in 1..=n - 2 {
                prop_assert!(complement_identity_residual(&g, k).unwrap().abs() <= 1e-8);
            }
        }
        for k in 1..=n {
            prop_assert!(join_identity_residual(&g, k).unwrap().abs() <= 1e-8);
        }
    }

    #[test]
    fn last_step_drops_by_n(g in graph(20)) {
        let p = check_graph(&g, TolerancePolicy::default()).unwrap();
        let n = g.n();
        if n >= 2 {
            prop_assert!((p.excess_at(n) - p.excess_at(n - 1) + n as f64).abs() <= 1e-9);
        }
    }

    #[test]
    fn known_bounds_hold(g in graph(12)) {
        let failures = common::bound_failures(&g, 1e-9);
        prop_assert!(failures.is_empty(), "{:?}", failures);
    }

    #[test]
    fn signed_extremes_and_traces(sg in signed(14)) {
        let g = sg.base().clone();
        let plus = signed_spectrum(&SignedGraph::all_plus(g.clone())).unwrap();
        prop_assert!(sorted_close(&plus.values, &laplacian_spectrum(&g).unwrap().values, 1e-9));
        let s = signed_spectrum(&sg).unwrap();
        let l = signed_laplacian(&sg);
        prop_assert!((s.values.iter().sum::<f64>() - l.trace()).abs() <= 1e-9 * (1.0 + l.trace()));
        prop_assert!(s.values.iter().all(|&x| x >= -1e-9));
        prop_assert_eq!(SignedGraph::parse_text(&sg.to_text()).unwrap(), sg);
    }

    #[test]
    fn shift_identity_on_complete_bases(n in 2usize..30, seed in any::<u64>()) {
        let sg = brouwer_core::signed::sample_signed_complete(n, seed).unwrap();
        let dec = shift_decomposition(&sg).unwrap();
        prop_assert!(dec.residual <= 1e-12);
    }
}

/// No induced P4, C4 or 2K2 on any four vertices.
fn forbids_threshold_obstructions(g: &Graph) -> bool {
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let sub = g.induced_subgraph(&[a, b, c, d]).unwrap();
                    let mut deg = sub.degrees();
                    deg.sort_unstable();
                    // 2K2: [1,1,1,1]; P4: [1,1,2,2] with 3 edges; C4: [2,2,2,2]
                    if deg == [1, 1, 1, 1]
                        || deg == [2, 2, 2, 2]
                        || (deg == [1, 1, 2, 2] && sub.m() == 3)
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[test]
fn threshold_recognition() {
    let mut graphs = common::fixture("graphs_le7.g6");
    graphs.extend(common::fixture("graphs8.g6"));
    for g in &graphs {
        assert_eq!(g.is_threshold(), forbids_threshold_obstructions(g), "{g:?}");
    }
    // every construction string up to n = 8 yields a threshold graph
    for n in 1..=8usize {
        for bits in 0u32..1 << (n - 1) {
            let steps: Vec<ThresholdStep> = (0..n - 1)
                .map(|i| {
                    if bits >> i & 1 == 1 {
                        ThresholdStep::Join
                    } else {
                        ThresholdStep::Isolate
                    }
                })
                .collect();
            let g = threshold_from_steps(&steps).unwrap();
            assert_eq!(g.n(), n);
            assert!(g.is_threshold());
        }
    }
    // threshold graphs on n vertices up to isomorphism: 2^(n-1)
    for n in 1..=8usize {
        let count = graphs
            .iter()
            .filter(|g| g.n() == n && g.is_threshold())
            .count();
        assert_eq!(count, 1 << (n - 1), "n={n}");
    }
}

#[test]
fn graph6_round_trip_random_large() {
    let mut r = common::rng(99);
    for _ in 0..10_000 {
        let n = common::between(&mut r, 1, 100);
        let p = common::unit(&mut r);
        let g = common::gnp(&mut r, n, p);
        assert_eq!(parse_graph6(write_graph6(&g).as_bytes()).unwrap(), g);
    }
}
