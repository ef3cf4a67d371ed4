use proptest::prelude::*;
use qchan::channels::*;
use qchan::matcore::ComplexMatrix;
use qchan::measures::*;
use qchan::sample::*;

mod common;
use common::props;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(500)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn entropy_lies_between_zero_and_log_d(seed in any::<u64>(), d in 2usize..=6) {
        let rho = random_density_matrix(d, &mut stream_rng(seed, 0));
        let s = entropy(&rho).unwrap();
        prop_assert!(s >= -1e-12 && s <= (d as f64).log2() + 1e-12);
        let pure = random_pure_state(d, &mut stream_rng(seed, 1));
        prop_assert!(entropy(&pure).unwrap().abs() < 1e-10);
    }

    #[test]
    fn klein_inequality(seed in any::<u64>()) {
        props::klein_inequality(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn adjoint_duality(seed in any::<u64>()) {
        props::adjoint_duality(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn majorization_orders_power_sums_and_entropy(seed in any::<u64>()) {
        props::majorization_implies_orderings(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn off_common_outputs_are_strictly_majorized(seed in any::<u64>()) {
        props::strict_majorization_off_common(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn contraction_outputs_are_submajorized(seed in any::<u64>()) {
        props::contraction_submajorization(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn relative_entropy_ascent_is_monotone(seed in any::<u64>()) {
        props::ascent_is_monotone(seed).map_err(TestCaseError::fail)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn p_norm_ascent_is_monotone(seed in any::<u64>(), p in prop_oneof![1.2f64..4.0, Just(f64::INFINITY)]) {
        let ch = props::random_generalized(3, &mut stream_rng(seed, 0));
        let r = max_output_p_norm(&ch, p, 2, seed).unwrap();
        for t in &r.traces {
            for w in t.objective.windows(2) {
                prop_assert!(w[1] >= w[0] - 1e-12, "{} then {}", w[0], w[1]);
            }
        }
    }

    #[test]
    fn tensor_acts_factorwise(seed in any::<u64>()) {
        let mut rng = stream_rng(seed, 0);
        let (f, g) = (props::random_generalized(2, &mut rng), props::random_generalized(3, &mut rng));
        let (rho, sigma) = (random_density_matrix(2, &mut rng), random_density_matrix(3, &mut rng));
        let joint = f.tensor(&g).apply(&rho.kron(&sigma)).unwrap();
        let split = f.apply(&rho).unwrap().kron(&g.apply(&sigma).unwrap());
        prop_assert!((&joint - &split).max_abs() < 1e-12);
    }

    #[test]
    fn generalized_channels_are_unital_and_complete(seed in any::<u64>(), d in 2usize..=5) {
        let ch = props::random_generalized(d, &mut stream_rng(seed, 0));
        prop_assert!(ch.completeness_residual() < 1e-10);
        prop_assert!(ch.unitality_residual() < 1e-10);
        // Unital channels make states more mixed.
        let rho = random_density_matrix(d, &mut stream_rng(seed, 1));
        let (x, y) = (Spectrum::of(&rho).unwrap(), Spectrum::of(&ch.apply(&rho).unwrap()).unwrap());
        prop_assert!(majorizes(&x, &y).unwrap());
    }

    #[test]
    fn weyl_twirl_is_fully_depolarizing(seed in any::<u64>(), d in 2usize..=5) {
        let a = random_matrix(d, d, &mut stream_rng(seed, 0));
        let ws = weyl_operators(d);
        let mut twirl = ComplexMatrix::zeros(d, d);
        for w in &ws {
            twirl.add_scaled((1.0 / (d * d) as f64).into(), &(&(w * &a) * &w.adjoint()));
        }
        let expected = ComplexMatrix::identity(d).scale_complex(a.trace() / d as f64);
        prop_assert!((&twirl - &expected).max_abs() < 1e-12);
    }

    #[test]
    fn depolarizing_pure_outputs_have_extremal_spectrum(seed in any::<u64>(), d in 2usize..=5, a in 0.0f64..=1.0) {
        let ch = build_depolarizing(d, a).unwrap();
        let out = ch.apply(&random_pure_state(d, &mut stream_rng(seed, 0))).unwrap();
        let got = Spectrum::of(&out).unwrap();
        for (x, y) in got.values().iter().zip(props::extremal(d, a)) {
            prop_assert!((x - y).abs() < 1e-11);
        }
    }
}
