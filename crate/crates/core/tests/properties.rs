use num_bigint::BigUint;
use proptest::prelude::*;

use reclab_core::*;

fn prec() -> Precision {
    Precision::new(128).unwrap()
}

fn unit(words: [u64; 2]) -> UnitValue {
    let m = BigUint::from(words[0]) | (BigUint::from(words[1]) << 64u32);
    UnitValue::from_mantissa(m, BigUint::from(0u32), prec())
}

/// A point with 128 random high bits at 256-bit precision.
fn point(coords: &[[u64; 2]]) -> TorusPoint {
    let wide = Precision::new(256).unwrap();
    let coords = coords
        .iter()
        .map(|&w| UnitValue::from_mantissa(unit(w).mantissa() << 128u32, BigUint::from(0u32), wide))
        .collect();
    TorusPoint::new(coords).unwrap()
}

proptest! {
    #[test]
    fn add_then_sub_is_identity(a: [u64; 2], b: [u64; 2]) {
        let (a, b) = (unit(a), unit(b));
        prop_assert_eq!(a.add(&b).sub(&b), a);
    }

    #[test]
    fn integer_multiplication_distributes(a: [u64; 2], b: [u64; 2], n: u64) {
        let (a, b) = (unit(a), unit(b));
        prop_assert_eq!(a.add(&b).mul_u64(n), a.mul_u64(n).add(&b.mul_u64(n)));
        let zero = a.mul_i64(-7).add(&a.mul_i64(7));
        prop_assert_eq!(zero.mantissa(), &BigUint::from(0u32));
    }

    #[test]
    fn distance_is_symmetric_and_at_most_half(a: [u64; 2]) {
        let a = unit(a);
        let d = a.dist_to_integer();
        let mirrored = a.neg().dist_to_integer();
        prop_assert_eq!(d.mantissa(), mirrored.mantissa());
        prop_assert!(d.mantissa() <= &(BigUint::from(1u32) << 127u32));
    }

    #[test]
    fn interval_test_is_consistent(a: [u64; 2], err in 0u64..1 << 40, lo in 0u64..50, width in 1u64..50) {
        let hi = (lo + width).min(100);
        prop_assume!(lo < hi);
        let (lo, hi) = (Rational::new(lo, 100), Rational::new(hi, 100));
        let v = unit(a).with_err(BigUint::from(err));
        let exact = unit(a);
        match v.interval_test(lo, hi) {
            // Certainty with an error ball implies the same answer at its centre.
            Membership::Inside => prop_assert_eq!(exact.interval_test(lo, hi), Membership::Inside),
            Membership::Outside => prop_assert_eq!(exact.interval_test(lo, hi), Membership::Outside),
            Membership::Uncertain => prop_assert!(err > 0),
        }
    }

    #[test]
    fn orbit_composes(coords in prop::collection::vec(any::<[u64; 2]>(), 1..5), s in 0u64..1 << 30, t in 0u64..1 << 30) {
        let p = point(&coords);
        let sys = SkewSystem::from_spec(coords.len() as u32, &AlphaSpec::golden(), Precision::new(256).unwrap()).unwrap();
        let two_steps = sys.orbit(&sys.orbit(&p, s).unwrap(), t).unwrap();
        let one_step = sys.orbit(&p, s + t).unwrap();
        for (a, b) in two_steps.coords().iter().zip(one_step.coords()) {
            prop_assert_eq!(a.mantissa(), b.mantissa());
        }
    }

    #[test]
    fn alpha_text_round_trips(p in -50i64..50, q in prop_oneof![-9i64..0, 1i64..10], r in prop_oneof![-9i64..0, 1i64..10], d in 2u64..200) {
        prop_assume!(num_integer::Roots::sqrt(&d).pow(2) != d);
        let a = AlphaSpec::new(p, q, r, d).unwrap();
        let back: AlphaSpec = a.to_string().parse().unwrap();
        prop_assert_eq!(back.parts(), a.parts());
    }

    #[test]
    fn found_progressions_are_valid(seed: u64, k in 1u32..4) {
        let set = DenseSet::random(600, 0.4, seed);
        let diffs: Vec<u64> = (1..300).filter(|d| d % 2 == 1).collect();
        if let Some(w) = find_ap(&set, &diffs, k) {
            prop_assert!(w.validate(&set, &diffs));
            prop_assert_eq!(w.len, k + 1);
        }
    }
}

#[test]
fn lemma_solutions_verify_up_to_max_order() {
    for k in 1..=reclab_core::lemma::MAX_ORDER {
        let a = solve_canonical(k).unwrap();
        assert!(a.verify().is_ok());
        assert_eq!(a, solve_by_elimination(k).unwrap());
    }
}
