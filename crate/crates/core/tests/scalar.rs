use calogero_core::scalar::rational::rat;
use calogero_core::scalar::{Cyclotomic, NuPoly};
use proptest::prelude::*;

fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (prop::sample::select(vec![1u32, 3, 4, 5, 8, 12]), prop::collection::vec((-6i64..=6, 1i64..=4), 1..6)).prop_map(|(n, cs)| {
        let mut x = Cyclotomic::from_int(0);
        for (k, (a, b)) in cs.into_iter().enumerate() {
            x += &Cyclotomic::zeta_pow(n, k as i64).scale(&rat(a, b));
        }
        x
    })
}

proptest! {
    #[test]
    fn field_axioms(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn conjugation_is_a_ring_map(a in cyclotomic(), b in cyclotomic()) {
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!(a.conjugate().conjugate(), a);
    }

    #[test]
    fn roots_of_unity_have_the_right_order(n in 1u32..=24, k in -30i64..30) {
        let z = Cyclotomic::zeta_pow(n, k);
        prop_assert!(z.pow(n).is_one());
        prop_assert_eq!(&z * &Cyclotomic::zeta_pow(n, -k), Cyclotomic::from_int(1));
    }

    #[test]
    fn polynomial_evaluation_is_a_homomorphism(a in cyclotomic(), b in cyclotomic(), x in -5i64..5, y in 1i64..5) {
        let p = &NuPoly::constant(a.clone(), 2) + &NuPoly::var(0, 2);
        let q = &NuPoly::var_times(1, b.clone(), 2) + &NuPoly::one(2);
        let point = [Cyclotomic::from_rational(rat(x, y)), Cyclotomic::from_rational(rat(y, 3))];
        let lhs = (&p * &q).evaluate(&point).unwrap();
        let rhs = &p.evaluate(&point).unwrap() * &q.evaluate(&point).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
