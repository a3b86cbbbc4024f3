mod common;

use proptest::prelude::*;
use qfsplit::delta::{delta1, LiftSpec};
use qfsplit::groebner::{ideal_equal, IdealFp, DEFAULT_DEGREE_CEILING};
use qfsplit::multiheight::{element_heights, multiheight_colon, replay_colon, EngineConfig, HeightSeq};
use qfsplit::rdp::{d_equation, DFamily};
use qfsplit::ring::{parse_poly, ExponentBox, Monomial, Poly};
use qfsplit::threshold::{cumulative_heights_from_digits, height_seq_to_ppt, ppt_digits};
use qfsplit::trace::{ideal_image_u, trace_u};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(5)]
}

fn poly(p: u64, level: u32, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    let modulus = p.pow(level) as i64;
    prop::collection::vec(((0..=max_exp, 0..=max_exp, 0..=max_exp), 0..modulus), 0..=max_terms).prop_map(
        move |terms| Poly::from_terms(p, level, terms.into_iter().map(|((a, b, c), k)| (Monomial::new([a, b, c]), k))),
    )
}

fn lift_poly() -> impl Strategy<Value = Poly> {
    prime().prop_flat_map(|p| poly(p, 2, 3, 5))
}

fn fp_pair() -> impl Strategy<Value = (Poly, Poly, Poly)> {
    prime().prop_flat_map(|p| (poly(p, 1, 2, 3), poly(p, 1, 6, 6), poly(p, 1, 6, 6)))
}

fn height_seq() -> impl Strategy<Value = HeightSeq> {
    (prop::collection::vec(1u32..6, 0..4), prop::collection::vec(1u32..6, 1..4))
        .prop_map(|(mut pre, per)| {
            // No later height exceeds the first one.
            let top = pre.iter().chain(&per).copied().max().unwrap_or(1);
            pre.insert(0, top);
            HeightSeq::new(pre, per, true).expect("valid sequence")
        })
}

fn d_lift() -> impl Strategy<Value = LiftSpec> {
    (prop::bool::ANY, 2u32..=8, prop::bool::ANY).prop_flat_map(|(odd, n, xz)| {
        (0..n).prop_map(move |r| {
            let family = if odd { DFamily::Odd } else { DFamily::Even };
            let g = if xz && r > 0 { "x*z" } else { "0" };
            LiftSpec::parse(2, &d_equation(family, n, r), g).expect("d equation")
        })
    })
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn delta_identity(g in lift_poly()) {
        let p = g.p();
        let rhs = g.frobenius_lift().unwrap().add(&delta1(&g).unwrap().lift_to_level2().scale(p as i64)).unwrap();
        prop_assert_eq!(g.pow(p).unwrap(), rhs);
    }

    #[test]
    fn trace_is_p_inverse_semilinear((a, b, c) in fp_pair()) {
        let p = a.p();
        prop_assert_eq!(trace_u(&a.pow(p).unwrap().mul(&b).unwrap()), a.mul(&trace_u(&b)).unwrap());
        prop_assert_eq!(trace_u(&b.add(&c).unwrap()), trace_u(&b).add(&trace_u(&c)).unwrap());
    }

    #[test]
    fn render_then_parse_is_identity(g in prime().prop_flat_map(|p| (Just(p), 1u32..=2)).prop_flat_map(|(p, l)| poly(p, l, 7, 6))) {
        prop_assert_eq!(parse_poly(&g.render(), g.p(), g.level()).unwrap(), g);
    }

    #[test]
    fn capped_product_is_truncated_product(
        (a, b) in prime().prop_flat_map(|p| (poly(p, 2, 5, 5), poly(p, 2, 5, 5))),
        bounds in (1u64..8, 1u64..8, 1u64..8),
    ) {
        let cap = ExponentBox::new([bounds.0, bounds.1, bounds.2]);
        prop_assert_eq!(a.mul_capped(&b, &cap).unwrap(), a.mul(&b).unwrap().truncate(&cap));
        prop_assert_eq!(a.pow_capped(3, &cap).unwrap(), a.pow(3).unwrap().truncate(&cap));
    }

    #[test]
    fn threshold_digits_recover_cumulative_heights(seq in height_seq(), p in prime()) {
        let q = height_seq_to_ppt(&seq, p);
        let digits = ppt_digits(&q, p, 30).unwrap();
        let want: Vec<u64> = (0..30).map(|k| seq.cumulative(k)).take_while(|&h| h <= 30).collect();
        prop_assert_eq!(cumulative_heights_from_digits(&digits, p), want);
    }

    #[test]
    fn larger_heights_give_smaller_thresholds(seq in height_seq(), p in prime(), at in 0usize..6) {
        // Raise one entry of an unrolled copy; the threshold must drop.
        let len = seq.preperiod().len() + seq.period().len() * 3;
        let at = at % len;
        let mut pre = seq.prefix(len);
        pre[at] += 1;
        pre[0] = pre[0].max(pre[at]);
        let bigger = HeightSeq::new(pre, seq.period().to_vec(), true).unwrap();
        prop_assert!(height_seq_to_ppt(&bigger, p) < height_seq_to_ppt(&seq, p));
    }

    #[test]
    fn height_seq_display_round_trips(seq in height_seq()) {
        let back: HeightSeq = seq.to_string().parse().unwrap();
        prop_assert_eq!(back.preperiod(), seq.preperiod());
        prop_assert_eq!(back.period(), seq.period());
    }
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn trace_of_frobenius_power_is_the_ideal(
        gens in prop_oneof![Just(2u64), Just(3)].prop_flat_map(|p| prop::collection::vec(poly(p, 1, 2, 3), 1..=3)),
    ) {
        prop_assume!(gens.iter().any(|g| !g.is_zero()));
        let ideal = IdealFp::new(gens[0].p(), gens);
        let image = ideal_image_u(&ideal.frobenius_power(1).unwrap(), DEFAULT_DEGREE_CEILING).unwrap();
        prop_assert!(ideal_equal(&image, &ideal, DEFAULT_DEGREE_CEILING).unwrap());
    }

    #[test]
    fn membership_matches_linear_algebra(seed in any::<u64>(), p in prop_oneof![Just(2u64), Just(3)]) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<Poly> = (0..rng.gen_range(1..=3)).map(|_| {
            let d = rng.gen_range(1..=3);
            common::random_form(&mut rng, p, d, 0.5)
        }).collect();
        let d = rng.gen_range(2..=4);
        let g = common::random_form(&mut rng, p, d, 0.4);
        let ideal = IdealFp::new(p, gens.clone()).with_gb(DEFAULT_DEGREE_CEILING).unwrap();
        prop_assert_eq!(ideal.member(&g).unwrap(), common::span_member(&gens, &g));
    }

    #[test]
    fn colon_and_element_pipelines_agree(spec in d_lift()) {
        let cfg = EngineConfig::default();
        let colon = multiheight_colon(&spec, &cfg).unwrap();
        prop_assert!(colon.seq.certified());
        prop_assert_eq!(element_heights(&spec, 6, &cfg).unwrap(), colon.seq.prefix(6));
    }

    #[test]
    fn colon_replay_is_deterministic(spec in d_lift()) {
        let one = Poly::one(2, 1);
        let a = replay_colon(&spec, &one, 6, 12).unwrap();
        let b = replay_colon(&spec, &one, 6, 12).unwrap();
        prop_assert_eq!(&a, &b);
        let heights: Vec<u32> = a.iter().map(|s| s.height).collect();
        prop_assert_eq!(heights, multiheight_colon(&spec, &EngineConfig::default()).unwrap().seq.prefix(6));
    }
}
