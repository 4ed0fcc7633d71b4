use proptest::prelude::{prop_assert, prop_assert_eq, proptest, ProptestConfig};
use reltutte::random::{random_tensor_instance, rng_for, RandomInstanceSpec};
use reltutte::suite::{check_bijection, check_tensor};
use reltutte::tensor::{lambda_subsets, recolored};
use reltutte::{
    beta_lambda, beta_zero, pointed_polys, product_labeling, sigma, substitution_rhs, tensor_product, universal_tutte,
    universal_tutte_statesum, verify_tensor_formula, ColoredMultigraph, Edge, Orientation, PointedGraph,
    ProperLabeling, RelPolynomial, TensorInstance, VerifyOptions,
};

fn specs() -> (RandomInstanceSpec, RandomInstanceSpec) {
    let g1 = RandomInstanceSpec {
        vertices: 2..=4,
        regular_edges: 1..=5,
        zero_edges: 0..=2,
        lambda_edges: 1..=3,
        ..Default::default()
    };
    let g2 = RandomInstanceSpec {
        vertices: 2..=4,
        regular_edges: 1..=4,
        zero_edges: 0..=2,
        colors: 3,
        ..Default::default()
    };
    (g1, g2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn formula_holds(seed in 0u64..1_000_000) {
        let (a, b) = specs();
        let ti = random_tensor_instance(&a, &b, &mut rng_for(seed, 0));
        prop_assert!(check_tensor(&ti, 32, seed, Orientation::Aligned, false).is_ok());
    }

    #[test]
    fn bijection_round_trips(seed in 0u64..1_000_000) {
        let (mut a, b) = specs();
        a.regular_edges = 1..=4;
        a.lambda_edges = 1..=2;
        let ti = random_tensor_instance(&a, &b, &mut rng_for(seed, 1));
        prop_assert!(check_bijection(&ti).is_ok());
    }

    #[test]
    fn product_labeling_is_proper(seed in 0u64..1_000_000) {
        let (a, b) = specs();
        let ti = random_tensor_instance(&a, &b, &mut rng_for(seed, 2));
        let p = tensor_product(&ti);
        prop_assert!(product_labeling(&ti).validate(&p).is_ok());
        let lhs = universal_tutte_statesum(&p, &product_labeling(&ti)).unwrap();
        prop_assert!(reltutte::equal_mod_ideal(&lhs, &universal_tutte(&p), 32, seed));
    }

    #[test]
    fn sigma_is_idempotent_and_beta_zero_fixes_plain_symbols(seed in 0u64..1_000_000) {
        let (a, b) = specs();
        let ti = random_tensor_instance(&a, &b, &mut rng_for(seed, 3));
        let pp = pointed_polys(ti.g2()).unwrap();
        let u = universal_tutte(ti.g1());
        let s = sigma(&beta_lambda(&u, &pp, ti.lambda()));
        prop_assert_eq!(sigma(&s), s.clone());
        prop_assert!(s.is_z_linear());
        let plain = sigma(&u);
        prop_assert_eq!(beta_zero(&plain, &pp.t_0, Orientation::Aligned).unwrap(), plain);
    }
}

#[test]
fn rhs_is_sum_over_recolorings() {
    let (a, b) = specs();
    let ti = random_tensor_instance(&a, &b, &mut rng_for(99, 0));
    let pp = pointed_polys(ti.g2()).unwrap();
    let parts: Vec<RelPolynomial> = lambda_subsets(&ti)
        .iter()
        .map(|s| {
            let u = universal_tutte(&recolored(&ti, s));
            beta_zero(
                &sigma(&beta_lambda(&u, &pp, ti.lambda())),
                &pp.t_0,
                Orientation::Aligned,
            )
            .unwrap()
        })
        .collect();
    assert_eq!(
        substitution_rhs(&ti, Orientation::Aligned).unwrap(),
        RelPolynomial::sum(&parts)
    );
}

#[test]
fn loop_lambda_edges_glue_by_contraction() {
    let g1 = ColoredMultigraph::new(
        [],
        [
            Edge::regular("f", 0, 0, "la"),
            Edge::regular("g", 0, 1, "la"),
            Edge::zero("q", 0, 1, "z1"),
        ],
    )
    .unwrap();
    let g2 = PointedGraph::new(
        ColoredMultigraph::new(
            [],
            [
                Edge::pointed("e", 0, 1),
                Edge::zero("h", 0, 1, "z0"),
                Edge::regular("m", 1, 2, "w"),
                Edge::zero("k", 2, 0, "z1"),
            ],
        )
        .unwrap(),
    )
    .unwrap();
    let ti = TensorInstance::new(g1, g2, "la".into()).unwrap();
    let r = verify_tensor_formula(
        &ti,
        32,
        5,
        VerifyOptions {
            probe_flip: true,
            ..Default::default()
        },
    )
    .unwrap();
    assert!(r.equal_mod_ideal, "{}\n{}", r.lhs, r.rhs);
    assert!(r.flipped_equal_mod_ideal.is_some());
    let canonical = universal_tutte(&tensor_product(&ti));
    let labeled = universal_tutte_statesum(&tensor_product(&ti), &product_labeling(&ti)).unwrap();
    assert!(reltutte::equal_mod_ideal(&canonical, &labeled, 32, 1));
    assert!(ProperLabeling::canonical(&tensor_product(&ti))
        .validate(&tensor_product(&ti))
        .is_ok());
}
