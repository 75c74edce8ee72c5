use catbox_core::quantum::*;
use catbox_core::RngStream;
use proptest::prelude::*;

const TOL: f64 = ALGEBRAIC_TOL;

fn amp() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn pure() -> impl Strategy<Value = PureState> {
    (amp(), amp())
        .prop_filter("non-zero", |(a, b)| a.norm_sqr() + b.norm_sqr() > 1e-6)
        .prop_map(|(a, b)| pure_state(a, b).unwrap())
}

/// Mixtures of two random pure states.
fn density() -> impl Strategy<Value = DensityMatrix> {
    (pure(), pure(), 0.0f64..=1.0)
        .prop_map(|(a, b, w)| density_of(&a).mix(&density_of(&b), w).unwrap())
}

fn observable() -> impl Strategy<Value = Observable> {
    prop_oneof![
        Just(observable_h()),
        Just(observable_s()),
        (-10.0f64..10.0).prop_map(|t| observable_rotated(t).unwrap()),
        pure().prop_map(|e0| {
            let [a, b] = e0.amplitudes();
            let e1 = pure_state(-b.conj(), a.conj()).unwrap();
            Observable::new("Q", [e0, e1], ["up".into(), "down".into()]).unwrap()
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn pure_states_are_normalized(a in amp(), b in amp()) {
        prop_assume!(a.norm_sqr() + b.norm_sqr() > 1e-12);
        let s = pure_state(a, b).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() <= TOL);
    }

    #[test]
    fn cat_states_are_normalized(phase in -100.0f64..100.0) {
        prop_assert!((prepare_cat(phase).unwrap().norm_sqr() - 1.0).abs() <= TOL);
    }

    #[test]
    fn projectors_and_mixtures_are_valid(p in pure(), rho in density()) {
        let proj = density_of(&p);
        prop_assert!(proj.validate(TOL).is_ok());
        prop_assert!(proj.squared().approx_eq(&proj, TOL));
        prop_assert!(rho.validate(TOL).is_ok());
    }

    #[test]
    fn born_distribution_is_normalized(rho in density(), obs in observable()) {
        let d = born_probabilities(&rho, &obs);
        let ps = d.probabilities();
        prop_assert!(ps.iter().all(|p| *p >= 0.0));
        prop_assert!((ps.iter().sum::<f64>() - 1.0).abs() <= TOL);
    }

    #[test]
    fn eigenstates_give_certain_outcomes(obs in observable()) {
        for k in 0..2 {
            let d = born_probabilities(&density_of(obs.eigenstate(k)), &obs);
            prop_assert!((d.probability(obs.label(k)).unwrap() - 1.0).abs() <= TOL);
        }
    }

    #[test]
    fn measurement_record_is_consistent(rho in density(), obs in observable(), seed in any::<u64>()) {
        let (rec, _) = measure(&rho, &obs, RngStream::from_seed(seed));
        let k = obs.index_of(&rec.outcome_label).unwrap();
        prop_assert!(rec.post_state.approx_eq(&density_of(obs.eigenstate(k)), TOL));
        let p = born_probabilities(&rho, &obs).probability(&rec.outcome_label).unwrap();
        prop_assert!((rec.probability_of_outcome - p).abs() <= TOL);
        prop_assert!((0.0..1.0).contains(&rec.rng_draw));
    }

    #[test]
    fn repeated_measurement_is_idempotent(rho in density(), obs in observable(), seed in any::<u64>()) {
        let (first, rng) = measure(&rho, &obs, RngStream::from_seed(seed));
        let (second, _) = measure(&first.post_state, &obs, rng);
        prop_assert_eq!(&first.outcome_label, &second.outcome_label);
        prop_assert!(second.post_state.approx_eq(&first.post_state, TOL));
    }

    #[test]
    fn h_statistics_ignore_phase(phase in -50.0f64..50.0) {
        let d = born_probabilities(&density_of(&prepare_cat(phase).unwrap()), &observable_h());
        prop_assert!((d.probability("dead").unwrap() - 0.5).abs() <= TOL);
        prop_assert!((d.probability("alive").unwrap() - 0.5).abs() <= TOL);
    }

    #[test]
    fn dephasing_preserves_trace_and_positivity(rho in density(), strength in 0.0f64..=1.0) {
        let out = dephase(&rho, strength).unwrap();
        prop_assert!(out.validate(TOL).is_ok());
        prop_assert_eq!(out.entry(0, 0), rho.entry(0, 0));
        prop_assert_eq!(out.entry(1, 1), rho.entry(1, 1));
        prop_assert_eq!(dephase(&rho, 0.0).unwrap(), rho);
        // Full dephasing is diagonal, so it commutes with |dead><dead|.
        let full = dephase(&rho, 1.0).unwrap();
        prop_assert!(full.entry(0, 1).norm() == 0.0 && full.entry(1, 0).norm() == 0.0);
    }

    #[test]
    fn trace_distance_is_a_metric(a in density(), b in density(), c in density()) {
        let ab = trace_distance(&a, &b);
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert!((ab - trace_distance(&b, &a)).abs() <= TOL);
        prop_assert!(trace_distance(&a, &a) <= TOL);
        prop_assert!(ab <= trace_distance(&a, &c) + trace_distance(&c, &b) + TOL);
        if ab <= 1e-12 {
            prop_assert!(a.approx_eq(&b, 1e-6));
        }
    }

    #[test]
    fn same_seed_same_records(rho in density(), obs in observable(), seed in any::<u64>()) {
        let run = |seed| {
            let mut rng = RngStream::from_seed(seed);
            let mut out = Vec::new();
            let mut state = rho;
            for _ in 0..5 {
                let (rec, next) = measure(&state, &obs, rng);
                rng = next;
                state = rec.post_state;
                out.push(serde_json::to_string(&rec).unwrap());
            }
            out
        };
        prop_assert_eq!(run(seed), run(seed));
    }
}

#[test]
fn eq1_and_eq2_agree_on_h_and_differ_on_s() {
    let cat = density_of(&prepare_cat(0.0).unwrap());
    let mix = mixed_dead_alive();
    let h = observable_h();
    assert_eq!(
        born_probabilities(&cat, &h).probabilities(),
        born_probabilities(&mix, &h).probabilities()
    );
    let s = observable_s();
    assert!((born_probabilities(&cat, &s).probability("+1").unwrap() - 1.0).abs() <= TOL);
    assert_eq!(born_probabilities(&mix, &s).probability("+1").unwrap(), 0.5);
}
