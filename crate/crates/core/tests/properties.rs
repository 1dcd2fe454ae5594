//! Randomized law checks for the combinatorial kernels: encoding round
//! trips, involutions, product identities, duality symmetries and descent.

use proptest::prelude::*;

use nccr_core::{
    cohomology, dual_diagram, higher_ext_vanishes, lr_decompose, rotation_distance,
    rotation_distance_geometric, staircase_complex, to_binary, verify_distance_descent, weyl_dim,
    young::from_binary, young::is_upper_triangular, BinarySeq, BundleDescriptor, BwbOutcome,
    GrContext, Weight, YoungDiagram,
};

/// Coprime contexts exercised by the random sweeps, beyond the exhaustive
/// boxes already covered deterministically.
fn arb_context() -> impl Strategy<Value = GrContext> {
    prop::sample::select(vec![(5u32, 2u32), (7, 2), (7, 3), (8, 3), (9, 4), (11, 4)])
        .prop_map(|(n, k)| GrContext::new(n, k).expect("fixed coprime pair"))
}

/// A partition with `rows` parts, each at most `width`, zero-padded.
fn arb_partition(rows: usize, width: u32) -> impl Strategy<Value = YoungDiagram> {
    prop::collection::vec(0..=width, rows).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        YoungDiagram::new(v).expect("sorted rows are non-increasing")
    })
}

/// A context together with a diagram that fits its box.
fn arb_boxed() -> impl Strategy<Value = (GrContext, YoungDiagram)> {
    arb_context().prop_flat_map(|ctx| {
        let rows = ctx.k() as usize;
        let width = ctx.complement_rank();
        arb_partition(rows, width).prop_map(move |d| (ctx.clone(), d))
    })
}

/// A dominant weight with `len` entries in [-bound, bound].
fn arb_weight(len: usize, bound: i64) -> impl Strategy<Value = Weight> {
    prop::collection::vec(-bound..=bound, len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Weight::new(v).expect("sorted entries are dominant")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn binary_encoding_round_trips((ctx, d) in arb_boxed()) {
        let seq = to_binary(&d, &ctx).unwrap();
        prop_assert_eq!(seq.len() as u32, ctx.n());
        prop_assert_eq!(seq.ones() as u32, ctx.k());
        prop_assert_eq!(from_binary(&seq), d);
    }

    #[test]
    fn rotations_compose_and_cycle(
        bits in prop::collection::vec(0u8..=1, 2..=16),
        a in -20i64..=20,
        b in -20i64..=20,
    ) {
        // constant sequences encode no diagram and are rejected upstream
        prop_assume!(bits.contains(&0) && bits.contains(&1));
        let seq = BinarySeq::new(bits).unwrap();
        let n = seq.len() as i64;
        prop_assert_eq!(seq.rotate(a).rotate(b), seq.rotate(a + b));
        prop_assert_eq!(seq.rotate(n), seq.clone());
        prop_assert_eq!(seq.rotate(a).ones(), seq.ones());
    }

    #[test]
    fn transpose_is_involutive_up_to_padding(d in arb_partition(5, 6)) {
        prop_assert_eq!(d.transpose().transpose(), d.trimmed());
    }

    #[test]
    fn dual_twice_shifts_by_the_last_row(d in arb_partition(4, 6)) {
        let last = d.last_row();
        let expected = YoungDiagram::new(
            d.rows().iter().map(|&r| r - last).collect()
        ).unwrap();
        prop_assert_eq!(dual_diagram(&dual_diagram(&d)), expected);
    }

    #[test]
    fn products_commute_count_boxes_and_match_dimensions(
        a in arb_partition(3, 4),
        b in arb_partition(3, 4),
    ) {
        let wa = Weight::from_diagram(&a);
        let wb = Weight::from_diagram(&b);
        let ab = lr_decompose(&wa, &wb, 3).unwrap();
        let ba = lr_decompose(&wb, &wa, 3).unwrap();
        prop_assert_eq!(ab.terms(), ba.terms());
        let boxes = wa.total() + wb.total();
        let mut total_dim: u128 = 0;
        for (gamma, &mult) in ab.terms() {
            prop_assert_eq!(gamma.total(), boxes);
            total_dim += u128::from(mult) * u128::from(weyl_dim(gamma, 3).unwrap());
        }
        let expected = u128::from(weyl_dim(&wa, 3).unwrap()) * u128::from(weyl_dim(&wb, 3).unwrap());
        prop_assert_eq!(total_dim, expected);
        // the componentwise sum of the factors always appears
        let cartan = Weight::new(
            wa.entries().iter().zip(wb.entries()).map(|(x, y)| x + y).collect()
        ).unwrap();
        prop_assert!(ab.multiplicity(&cartan) >= 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn serre_duality_pairs_degrees_and_dims(
        quot in arb_weight(3, 2),
        sub in arb_weight(2, 2),
        twist in -3i64..=3,
    ) {
        let ctx = GrContext::new(5, 2).unwrap();
        let total = (ctx.k() * ctx.complement_rank()) as u32;
        let bundle = BundleDescriptor::new(&ctx, quot.clone(), sub.clone(), twist).unwrap();
        let reverse_negate = |w: &Weight| {
            Weight::new(w.entries().iter().rev().map(|&e| -e).collect()).unwrap()
        };
        let dual = BundleDescriptor::new(
            &ctx,
            reverse_negate(&quot),
            reverse_negate(&sub),
            -twist - i64::from(ctx.n()),
        )
        .unwrap();
        match (cohomology(&ctx, &bundle).unwrap(), cohomology(&ctx, &dual).unwrap()) {
            (BwbOutcome::Vanishes, BwbOutcome::Vanishes) => {}
            (
                BwbOutcome::Cohomology { degree: q1, dim: d1, .. },
                BwbOutcome::Cohomology { degree: q2, dim: d2, .. },
            ) => {
                prop_assert_eq!(q1 + q2, total);
                prop_assert_eq!(d1, d2);
            }
            (lhs, rhs) => prop_assert!(false, "one side vanished alone: {:?} vs {:?}", lhs, rhs),
        }
    }

    #[test]
    fn both_distance_computations_agree((ctx, d) in arb_boxed()) {
        prop_assert_eq!(
            rotation_distance(&d, &ctx).unwrap(),
            rotation_distance_geometric(&d, &ctx).unwrap()
        );
    }

    #[test]
    fn complex_terms_strictly_descend((ctx, d) in arb_boxed()) {
        let report = verify_distance_descent(&ctx, &d).unwrap();
        prop_assert!(report.ok);
        let member = is_upper_triangular(&d.sl_normalized(), &ctx).unwrap();
        prop_assert_eq!(report.vacuous, member);
    }

    #[test]
    fn closed_form_matches_sweep_in_regime((ctx, d) in arb_boxed()) {
        // boxed diagrams always sit inside the closed-form regime
        let complex = staircase_complex(&ctx, &d).unwrap();
        prop_assert_eq!(complex.descriptions_agree(), Some(true));
    }

    #[test]
    fn serialization_round_trips((ctx, d) in arb_boxed(), w in arb_weight(4, 9)) {
        let dj = serde_json::to_string(&d).unwrap();
        prop_assert_eq!(serde_json::from_str::<YoungDiagram>(&dj).unwrap(), d.clone());
        let wj = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<Weight>(&wj).unwrap(), w);
        let seq = to_binary(&d, &ctx).unwrap();
        let sj = serde_json::to_string(&seq).unwrap();
        prop_assert_eq!(serde_json::from_str::<BinarySeq>(&sj).unwrap(), seq);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn members_never_have_higher_cohomology(
        pick_a in 0usize..30,
        pick_b in 0usize..30,
        twist in 0u32..=8,
    ) {
        let ctx = GrContext::new(11, 4).unwrap();
        let members = nccr_core::enumerate_up(&ctx);
        let a = &members[pick_a % members.len()];
        let b = &members[pick_b % members.len()];
        prop_assert!(higher_ext_vanishes(&ctx, a, b, twist).unwrap());
    }
}
