use milnor_core::algebra::{rational, Polynomial};
use proptest::prelude::*;

const M: usize = 3;

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0u32..4, M), -10i64..=10, 1i64..=6),
        0..6,
    )
    .prop_map(|terms| {
        Polynomial::from_terms(
            M,
            terms.into_iter().map(|(e, n, d)| (e, rational(n, d))),
        )
        .unwrap()
    })
}

fn point() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, M).prop_map(|v| {
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n > 1.0 {
            v.into_iter().map(|c| c / n).collect()
        } else {
            v
        }
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn canonical_form_is_idempotent(a in poly()) {
        let rebuilt = Polynomial::from_terms(
            a.num_vars(),
            a.terms().map(|(m, c)| (m.exponents().to_vec(), c.clone())),
        ).unwrap();
        prop_assert_eq!(&rebuilt, &a);
        prop_assert!(a.terms().all(|(_, c)| *c != rational(0, 1)));
    }

    #[test]
    fn evaluation_is_multiplicative(a in poly(), b in poly(), x in point()) {
        let lhs = (&a * &b).eval(&x).unwrap();
        let rhs = a.eval(&x).unwrap() * b.eval(&x).unwrap();
        // Relative to the coefficient bound, which dominates both sides.
        let scale = (a.magnitude_at_radius(1.0) * b.magnitude_at_radius(1.0)).max(1.0);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn gradient_commutes_with_add(a in poly(), b in poly()) {
        let lhs = (&a + &b).gradient();
        let rhs = a.gradient().checked_add(&b.gradient()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
