mod common;

use proptest::prelude::{prop_assert, prop_assert_eq, proptest, ProptestConfig};
use rand::Rng;
use reltutte::random::{random_graph, rng_for, RandomInstanceSpec};
use reltutte::{ColoredMultigraph, Edge, PivotClassKey};

fn zero_spec(max_edges: usize) -> RandomInstanceSpec {
    RandomInstanceSpec {
        vertices: 1..=6,
        regular_edges: 0..=0,
        zero_edges: 1..=max_edges,
        ..Default::default()
    }
}

fn with_marker(g: &ColoredMultigraph, rng: &mut impl Rng) -> ColoredMultigraph {
    let n = g.max_vertex().unwrap() + 1;
    let mut edges = g.edges().to_vec();
    edges.push(Edge::pointed("e", rng.gen_range(0..n), rng.gen_range(0..n)));
    ColoredMultigraph::new(g.vertices().iter().copied(), edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pivots_keep_the_key(seed in 0u64..1_000_000) {
        let mut rng = rng_for(seed, 0);
        let mut g = random_graph(&zero_spec(9), &mut rng);
        if rng.gen_bool(0.5) {
            g = with_marker(&g, &mut rng);
        }
        let key = g.pivot_class_key();
        let mut cur = g.clone();
        for _ in 0..3 {
            if let Some(p) = common::random_pivot(&cur, &mut rng) {
                prop_assert_eq!(&p.pivot_class_key(), &key);
                cur = p;
            }
        }
    }

    #[test]
    fn key_ignores_relabeling(seed in 0u64..1_000_000) {
        let mut rng = rng_for(seed, 1);
        let g = random_graph(&zero_spec(8), &mut rng);
        let shift: u32 = rng.gen_range(1..50);
        // monotone renaming keeps marker orientation
        let h = g.relabel_vertices(|v| 3 * v + shift);
        let h = h.relabel_edges(|id| reltutte::EdgeId::new(format!("r{id}")));
        prop_assert_eq!(g.pivot_class_key(), h.pivot_class_key());
    }

    #[test]
    fn keys_match_brute_force_comparator(seed in 0u64..1_000_000) {
        let mut rng = rng_for(seed, 2);
        let small = RandomInstanceSpec { vertices: 1..=3, ..zero_spec(5) };
        let mut a = random_graph(&small, &mut rng);
        let mut b = random_graph(&small, &mut rng);
        if rng.gen_bool(0.3) {
            a = with_marker(&a, &mut rng);
            b = with_marker(&b, &mut rng);
        }
        prop_assert_eq!(a.pivot_class_key() == b.pivot_class_key(), common::same_block_multiset(&a, &b));
    }

    #[test]
    fn splicing_concatenates_block_codes(seed in 0u64..1_000_000) {
        let mut rng = rng_for(seed, 3);
        let a = random_graph(&zero_spec(4), &mut rng).pivot_class_key();
        let b = random_graph(&zero_spec(4), &mut rng).pivot_class_key();
        let s = PivotClassKey::spliced(&[&a, &b]);
        let mut codes: Vec<String> = a.codes().iter().chain(b.codes()).cloned().collect();
        codes.sort();
        prop_assert_eq!(s.codes(), &codes[..]);
        prop_assert!(s.representative().is_connected());
    }
}

#[test]
fn exhaustive_small_shapes_agree_with_comparator() {
    let shapes = common::connected_multigraphs_up_to_iso(4);
    let graphs: Vec<ColoredMultigraph> = shapes
        .iter()
        .flat_map(|pairs| {
            (0..1u32 << pairs.len()).map(move |mask| {
                let edges = pairs.iter().enumerate().map(|(i, &(u, v))| {
                    let c = if mask >> i & 1 == 1 { "z1" } else { "z0" };
                    Edge::zero(&format!("h{i}"), u, v, c)
                });
                ColoredMultigraph::new([], edges).unwrap()
            })
        })
        .collect();
    let keys: Vec<_> = graphs.iter().map(|g| g.pivot_class_key()).collect();
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            if keys[i] == keys[j] {
                assert!(
                    common::same_block_multiset(&graphs[i], &graphs[j]),
                    "{:?} vs {:?}",
                    graphs[i],
                    graphs[j]
                );
            }
        }
    }
    let distinct: std::collections::BTreeSet<_> = keys.iter().collect();
    assert!(distinct.len() < graphs.len());
}
