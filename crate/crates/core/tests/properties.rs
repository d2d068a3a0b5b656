use proptest::prelude::*;
use renyi_core::graph::{degree_sequence, parse_edge_list, Graph};
use renyi_core::index::renyi_index_of;
use renyi_core::{sample_hetero_er, HeteroErConfig, Kernel, SeedSpec};

/// Direct evaluation of the index, no compensation or sorting.
fn naive_index(d: &[f64], alpha: f64) -> f64 {
    let n = d.len() as f64;
    let mean = d.iter().sum::<f64>() / n;
    if (alpha - 1.0).abs() < 1e-12 {
        let s: f64 = d
            .iter()
            .map(|&x| x / mean)
            .filter(|&r| r > 0.0)
            .map(|r| r * r.ln())
            .sum::<f64>()
            / n;
        1.0 - (-s).exp()
    } else {
        let s: f64 = d.iter().map(|&x| (x / mean).powf(alpha)).sum::<f64>() / n;
        1.0 - s.powf(1.0 / (1.0 - alpha))
    }
}

fn weights() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![Just(0.0), 1e-3f64..1e3], 1..60)
        .prop_filter("some positive weight", |v| v.iter().any(|&x| x > 0.0))
}

fn alphas() -> impl Strategy<Value = f64> {
    prop_oneof![0.05f64..0.99, 1.01f64..20.0, Just(1.0), Just(2.0)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn index_in_unit_interval(d in weights(), a in alphas()) {
        let r = renyi_index_of(&d, a).unwrap();
        prop_assert!((0.0..=1.0).contains(&r), "{r}");
    }

    #[test]
    fn agrees_with_direct_formula(d in weights(), a in alphas()) {
        let r = renyi_index_of(&d, a).unwrap();
        prop_assert!((r - naive_index(&d, a)).abs() < 1e-9);
    }

    #[test]
    fn scale_invariant(d in weights(), a in alphas(), c in 1e-3f64..1e3) {
        let scaled: Vec<f64> = d.iter().map(|x| x * c).collect();
        let r = renyi_index_of(&d, a).unwrap();
        let rs = renyi_index_of(&scaled, a).unwrap();
        prop_assert!((r - rs).abs() <= 1e-12 * r.abs().max(1e-3), "{r} vs {rs}");
    }

    #[test]
    fn permutation_invariant(d in weights(), a in alphas(), seed in any::<u64>()) {
        let mut shuffled = d.clone();
        let mut s = seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(renyi_index_of(&d, a).unwrap(), renyi_index_of(&shuffled, a).unwrap());
    }

    #[test]
    fn constant_is_zero(x in 1e-6f64..1e6, n in 1usize..200, a in alphas()) {
        prop_assert_eq!(renyi_index_of(&vec![x; n], a).unwrap(), 0.0);
    }

    #[test]
    fn continuous_at_one(d in weights()) {
        let r1 = renyi_index_of(&d, 1.0).unwrap();
        for a in [1.0 - 1e-5, 1.0 + 1e-5] {
            prop_assert!((renyi_index_of(&d, a).unwrap() - r1).abs() <= 1e-3);
        }
    }

    #[test]
    fn nondecreasing_in_alpha(d in weights(), a in 0.1f64..10.0, step in 0.01f64..5.0) {
        let lo = renyi_index_of(&d, a).unwrap();
        let hi = renyi_index_of(&d, a + step).unwrap();
        prop_assert!(hi >= lo - 1e-12);
    }

    #[test]
    fn appending_zero_raises_index(d in weights(), a in alphas()) {
        let mut more = d.clone();
        more.push(0.0);
        prop_assert!(renyi_index_of(&more, a).unwrap() >= renyi_index_of(&d, a).unwrap() - 1e-12);
    }

    #[test]
    fn edge_list_round_trip(
        n in 2usize..40,
        pairs in prop::collection::vec((0u32..40, 0u32..40), 0..120),
    ) {
        let edges = pairs.into_iter().map(|(u, v)| (u % n as u32, v % n as u32));
        let (g, _) = Graph::from_edges(n, edges).unwrap();
        let parsed = parse_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(&parsed.graph, &g);
        prop_assert_eq!(parsed.duplicates, 0);
        let ds = degree_sequence(&g);
        prop_assert_eq!(ds.total(), 2 * g.edge_count() as u64);
        prop_assert_eq!(degree_sequence(&parsed.graph), ds);
    }

    #[test]
    fn generated_graphs_round_trip(seed in any::<u64>(), kappa in 0.0f64..10.0) {
        let cfg = HeteroErConfig::new(60, 0.3, Kernel::exponential_product(kappa).unwrap()).unwrap();
        let g = sample_hetero_er(&cfg, &SeedSpec::new(seed, "prop", 0));
        let parsed = parse_edge_list(&g.to_edge_list()).unwrap().graph;
        prop_assert_eq!(degree_sequence(&parsed), degree_sequence(&g));
        prop_assert_eq!(degree_sequence(&g).total(), 2 * g.edge_count() as u64);
    }
}

#[test]
fn hand_computed_values() {
    let star = [3.0, 1.0, 1.0, 1.0];
    assert!((renyi_index_of(&star, 2.0).unwrap() - 0.25).abs() < 1e-15);
    // ratios (2, 2/3, 2/3, 2/3)
    let s = (2.0 * 2f64.ln() + 2.0 * (2.0f64 / 3.0).ln()) / 4.0;
    assert!((renyi_index_of(&star, 1.0).unwrap() - (1.0 - (-s).exp())).abs() < 1e-14);
    assert!((renyi_index_of(&[1.0, 0.0], 2.0).unwrap() - 0.5).abs() < 1e-15);
}

#[test]
fn large_alpha_is_stable() {
    let d = [1.0, 2.0, 3.0, 1000.0];
    for a in [60.0, 200.0, 1e4] {
        let r = renyi_index_of(&d, a).unwrap();
        assert!(r.is_finite() && (0.0..=1.0).contains(&r), "{a}: {r}");
    }
    // α → ∞ tends to 1 − mean / max
    let mean = d.iter().sum::<f64>() / 4.0;
    assert!((renyi_index_of(&d, 1e6).unwrap() - (1.0 - mean / 1000.0)).abs() < 1e-3);
}
