//! Property-based invariants: operator identities in exact arithmetic, norm
//! axioms, search soundness, and serialization round trips.

use besicov::besicovitch::{
    clique_search_exact, clique_search_heuristic, equalize_family, find_violation, greedy_cover,
    l1_cross, one_dim_pair, open_closed_convert, pentagon, validate_family, BallFamily,
    CandidateSet, Certificate,
};
use besicov::constructions::{build_adversarial, extrapolation_constant, strong_lower_bound_eval};
use besicov::geometry::{
    angular_separation_bound, distance, BallKind, NormSpec, Vector,
};
use besicov::measure::{lp_norm, AveragingOperator, DiscreteMeasure, SupportFunction};
use besicov::scalar::Scalar;

use num_traits::ToPrimitive;
use proptest::prelude::*;

/// Random exact 1D measure: distinct rational atoms k/8 and weights in
/// [1/10, 10].
fn measure_1d() -> impl Strategy<Value = DiscreteMeasure> {
    prop::collection::btree_set(-200i64..=200, 2..20)
        .prop_flat_map(|nums| {
            let n = nums.len();
            (Just(nums), prop::collection::vec(1i64..=100, n))
        })
        .prop_map(|(nums, ws)| {
            let atoms = nums
                .iter()
                .map(|&a| Vector::from_ratios(&[(a, 8)]))
                .collect();
            let weights = ws.iter().map(|&w| Scalar::ratio(w, 10)).collect();
            DiscreteMeasure::new(NormSpec::L1, atoms, weights).unwrap()
        })
}

fn radius() -> impl Strategy<Value = Scalar> {
    (1i64..=64).prop_map(|k| Scalar::ratio(k, 8))
}

/// A valid random 1D closed pair: witness 0 inside both unit balls, centers
/// more than the radius apart (gap at least 66/64 > 1).
fn pair_1d() -> impl Strategy<Value = BallFamily> {
    (-64i64..=-33, 33i64..=64).prop_map(|(a, b)| {
        BallFamily::equal_radius(
            NormSpec::L1,
            vec![
                Vector::from_ratios(&[(a, 64)]),
                Vector::from_ratios(&[(b, 64)]),
            ],
            Scalar::one(),
            BallKind::Closed,
            Vector::from_ints(&[0]),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn averaging_fixes_constants((mu, r) in (measure_1d(), radius())) {
        let op = AveragingOperator::new(mu.clone(), r, BallKind::Closed).unwrap();
        let averaged = op.apply(&SupportFunction::ones(mu.len())).unwrap();
        for v in averaged.values() {
            prop_assert_eq!(v, &Scalar::one());
        }
    }

    #[test]
    fn duality_holds_exactly((mu, r) in (measure_1d(), radius())) {
        let op = AveragingOperator::new(mu.clone(), r, BallKind::Closed).unwrap();
        let conj = op.conjugate();
        let (norm, argmax) = op.l1_operator_norm();
        let mut best = Scalar::zero();
        for i in 0..mu.len() {
            // ‖A 1_y‖₁ / ‖1_y‖₁ recovers a_r(y) exactly.
            let spike = SupportFunction::indicator(mu.len(), i);
            let image = op.apply(&spike).unwrap();
            let ratio = &lp_norm(&mu, &image, 1.0).unwrap() / &mu.weights()[i];
            prop_assert_eq!(&ratio, &conj[i]);
            best = best.max(&ratio);
        }
        prop_assert_eq!(&best, &norm);
        prop_assert_eq!(&conj[argmax], &norm);
    }

    #[test]
    fn operator_is_linear_and_positive(
        (mu, r) in (measure_1d(), radius()),
        seed_f in -50i64..=50,
        seed_g in -50i64..=50,
    ) {
        let n = mu.len();
        let f = SupportFunction::new(
            (0..n).map(|i| Scalar::ratio(seed_f + i as i64, 9)).collect(),
        );
        let g = SupportFunction::new(
            (0..n).map(|i| Scalar::ratio(seed_g - 2 * i as i64, 5)).collect(),
        );
        let op = AveragingOperator::new(mu.clone(), r, BallKind::Closed).unwrap();
        let (alpha, beta) = (Scalar::ratio(3, 4), Scalar::ratio(-7, 3));
        let combo = SupportFunction::new(
            f.values()
                .iter()
                .zip(g.values())
                .map(|(a, b)| &(&alpha * a) + &(&beta * b))
                .collect(),
        );
        let lhs = op.apply(&combo).unwrap();
        let fa = op.apply(&f).unwrap();
        let ga = op.apply(&g).unwrap();
        for i in 0..n {
            let rhs = &(&alpha * &fa[i]) + &(&beta * &ga[i]);
            prop_assert_eq!(&lhs[i], &rhs);
        }
        let pos = op.apply(&f.abs()).unwrap();
        for v in pos.values() {
            prop_assert!(!v.is_negative());
        }
    }

    #[test]
    fn sup_norm_never_grows((mu, r) in (measure_1d(), radius()), k in 0usize..4) {
        let op = AveragingOperator::new(mu.clone(), r, BallKind::Closed).unwrap();
        let f = SupportFunction::new(
            (0..mu.len())
                .map(|i| Scalar::ratio((i as i64 + 1) * (k as i64 + 1) % 13 - 6, 3))
                .collect(),
        );
        let averaged = op.apply(&f).unwrap();
        prop_assert!(averaged.sup_norm() <= f.sup_norm());
    }

    #[test]
    fn small_radius_is_identity(mu in measure_1d()) {
        // Strictly below the minimal atom gap, each closed ball is a point.
        let mut gap: Option<Scalar> = None;
        for i in 0..mu.len() {
            for j in i + 1..mu.len() {
                let d = distance(mu.norm_spec(), &mu.atoms()[i], &mu.atoms()[j]).unwrap();
                gap = Some(match gap { None => d, Some(g) => g.min(&d) });
            }
        }
        let r = &gap.unwrap() / &Scalar::from_int(2);
        let op = AveragingOperator::new(mu.clone(), r, BallKind::Closed).unwrap();
        let f = SupportFunction::new(
            (0..mu.len()).map(|i| Scalar::ratio(i as i64 - 3, 11)).collect(),
        );
        let averaged = op.apply(&f).unwrap();
        prop_assert_eq!(averaged.values(), f.values());
    }

    #[test]
    fn lp_norm_bounded_by_e_to_the_inv_p((mu, r) in (measure_1d(), radius()), off in 0i64..40) {
        let op = AveragingOperator::new(mu.clone(), r, BallKind::Closed).unwrap();
        let f = SupportFunction::new(
            (0..mu.len()).map(|i| Scalar::ratio(off + 3 * i as i64 % 17 - 8, 6)).collect(),
        );
        let averaged = op.apply(&f).unwrap();
        for p in [1.5, 2.0, 4.0] {
            let lhs = lp_norm(&mu, &averaged, p).unwrap().to_f64();
            let rhs = 2f64.powf(1.0 / p) * lp_norm(&mu, &f, p).unwrap().to_f64();
            prop_assert!(lhs <= rhs * (1.0 + 1e-9), "p = {p}: {lhs} > {rhs}");
        }
    }

    #[test]
    fn csv_round_trips_exactly(mu in measure_1d()) {
        let text = mu.to_csv();
        let back = DiscreteMeasure::from_csv(NormSpec::L1, &text).unwrap();
        prop_assert_eq!(back.atoms(), mu.atoms());
        prop_assert_eq!(back.weights(), mu.weights());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn norms_satisfy_the_axioms(
        xs in prop::collection::vec(-40i64..=40, 2),
        ys in prop::collection::vec(-40i64..=40, 2),
        t in -12i64..=12,
    ) {
        let diamond = NormSpec::polytope(vec![
            Vector::from_ints(&[1, 0]),
            Vector::from_ints(&[0, 1]),
            Vector::from_ints(&[-1, 0]),
            Vector::from_ints(&[0, -1]),
        ])
        .unwrap();
        let x = Vector::new(xs.iter().map(|&v| Scalar::ratio(v, 4)).collect());
        let y = Vector::new(ys.iter().map(|&v| Scalar::ratio(v, 4)).collect());
        let sum = Vector::new(
            x.iter().zip(y.iter()).map(|(a, b)| a + b).collect(),
        );
        let scaled = x.scale(&Scalar::ratio(t, 5));
        for norm in [&NormSpec::L1, &NormSpec::L2, &NormSpec::Linf, &diamond] {
            let triangle = norm.norm(&sum).unwrap().to_f64()
                <= norm.norm(&x).unwrap().to_f64() + norm.norm(&y).unwrap().to_f64() + 1e-12;
            prop_assert!(triangle);
            let lhs = norm.norm(&scaled).unwrap().to_f64();
            let rhs = Scalar::ratio(t, 5).abs().to_f64() * norm.norm(&x).unwrap().to_f64();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
        }
        // The diamond gauge is the ℓ¹ norm, exactly.
        prop_assert_eq!(diamond.norm(&x).unwrap(), NormSpec::L1.norm(&x).unwrap());
    }

    #[test]
    fn angular_bound_is_a_lower_bound(
        a in prop::collection::vec(-100i64..=100, 2),
        b in prop::collection::vec(-100i64..=100, 2),
    ) {
        let x = Vector::from_f64s(&[a[0] as f64 / 16.0 + 0.0625, a[1] as f64 / 16.0 + 0.03125]);
        let y = Vector::from_f64s(&[b[0] as f64 / 16.0 + 0.125, b[1] as f64 / 16.0 + 0.0078125]);
        prop_assume!(!x.is_zero() && !y.is_zero());
        for norm in [NormSpec::L1, NormSpec::L2, NormSpec::Linf] {
            let bound = angular_separation_bound(&norm, &x, &y).unwrap().to_f64();
            let nx = norm.norm(&x).unwrap().to_f64();
            let ny = norm.norm(&y).unwrap().to_f64();
            let ux = Vector::from_f64s(&[x[0].to_f64() / nx, x[1].to_f64() / nx]);
            let uy = Vector::from_f64s(&[y[0].to_f64() / ny, y[1].to_f64() / ny]);
            let actual = distance(&norm, &ux, &uy).unwrap().to_f64();
            prop_assert!(bound <= actual + 1e-9, "{bound} > {actual}");
        }
    }

    #[test]
    fn conversions_preserve_cardinality(family in pair_1d()) {
        let open = open_closed_convert(&family).unwrap();
        prop_assert_eq!(open.kind(), BallKind::Open);
        prop_assert_eq!(open.len(), 2);
        prop_assert!(find_violation(&open, 0.0).unwrap().is_none());
        let closed = open_closed_convert(&open).unwrap();
        prop_assert_eq!(closed.kind(), BallKind::Closed);
        prop_assert_eq!(closed.len(), 2);
        prop_assert!(find_violation(&closed, 0.0).unwrap().is_none());

        let equalized = equalize_family(&family).unwrap();
        prop_assert_eq!(equalized.len(), family.len());
        prop_assert!(find_violation(&equalized, 0.0).unwrap().is_none());
        for c in equalized.centers() {
            prop_assert_eq!(family.norm_spec().norm(c).unwrap(), Scalar::one());
        }
    }

    #[test]
    fn certificates_round_trip_bytes(family in pair_1d()) {
        let cert = validate_family(&family, 0.0).unwrap();
        let json = serde_json::to_vec(&cert).unwrap();
        let back: Certificate = serde_json::from_slice(&json).unwrap();
        prop_assert_eq!(&back, &cert);
        back.verify().unwrap();
        prop_assert_eq!(serde_json::to_vec(&back).unwrap(), json);
    }

    #[test]
    fn extrapolation_is_monotone_and_tracks_floats(den in 1i64..=4, n in 1u64..=8) {
        for num in den + 1..=4 * den {
            let p = Scalar::ratio(num, den);
            let lo = extrapolation_constant(&p, n).unwrap();
            let hi = extrapolation_constant(&p, n + 1).unwrap();
            prop_assert!(lo <= hi);
            let pf = num as f64 / den as f64;
            let float = pf.powf(pf) * (pf - 1.0).powf(1.0 - pf) * (n as f64).powf(pf);
            let k = lo.to_f64().unwrap();
            let eps = 1e-9 * (1.0 + float);
            prop_assert!(k <= float + eps && float < k + 1.0 + eps);
        }
    }

    #[test]
    fn adversarial_bound_is_strict_for_all_c(c_num in 1i64..=1000, pick in 0usize..3) {
        let family = match pick {
            0 => one_dim_pair().unwrap().family().unwrap(),
            1 => l1_cross().unwrap().family().unwrap(),
            _ => pentagon().unwrap().family().unwrap(),
        };
        let e = match pick {
            0 => 2,
            1 => 4,
            _ => 5,
        };
        let c = Scalar::ratio(c_num, 100); // c ∈ (0, 10]
        let inst = build_adversarial(&family, &c).unwrap();
        let bound = strong_lower_bound_eval(&inst).unwrap();
        prop_assert!(bound.pass);
        prop_assert!(bound.value > bound.threshold);
        prop_assert!(bound.value <= Scalar::from_int(e));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn greedy_cover_partial_sum_below_count(
        mu in measure_1d(),
        pick in 0usize..16,
        s_num in 1i64..=7,
    ) {
        let y = mu.atoms()[pick % mu.len()].clone();
        let r = Scalar::one();
        let s = Scalar::ratio(s_num, 8);
        let outcome = greedy_cover(&mu, &y, &s, &r).unwrap();
        prop_assert!(outcome.partial_sum <= Scalar::from_int(outcome.count as i64));
        // The chosen balls form a valid open family containing y: on the
        // line its cardinality never exceeds the sharp constant 2.
        prop_assert!(outcome.count <= 2);
        prop_assert!(find_violation(outcome.family(), 0.0).unwrap().is_none());
    }

    #[test]
    fn exact_search_is_monotone_and_heuristic_is_sound(
        keep in prop::collection::btree_set(0usize..30, 5..30),
        seed in 0u64..500,
    ) {
        let full = CandidateSet::fib_circle(NormSpec::L2, 30).unwrap();
        let sub_points: Vec<Vector> = keep.iter().map(|&i| full.points()[i].clone()).collect();
        let sub = CandidateSet::new(
            NormSpec::L2,
            full.anchor().clone(),
            full.radius().clone(),
            sub_points,
        )
        .unwrap();
        let margin = 1e-9;
        let whole = clique_search_exact(&full, BallKind::Closed, margin, 2000).unwrap();
        let part = clique_search_exact(&sub, BallKind::Closed, margin, 2000).unwrap();
        prop_assert!(part.cardinality <= whole.cardinality);
        let heur = clique_search_heuristic(&full, BallKind::Closed, margin, seed, 200).unwrap();
        prop_assert!(heur.cardinality <= whole.cardinality);
        heur.verify().unwrap();
    }
}
