use num_rational::BigRational as Q;
use proptest::prelude::*;
use yangian::SeriesTail;

const ORDER: usize = 5;

fn rational() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=4).prop_map(|(a, b)| Q::new(a.into(), b.into()))
}

fn series() -> impl Strategy<Value = SeriesTail<Q>> {
    prop::collection::vec(rational(), ORDER + 1).prop_map(|c| SeriesTail::from_coeffs(c).unwrap())
}

fn unit_series() -> impl Strategy<Value = SeriesTail<Q>> {
    prop::collection::vec(rational(), ORDER).prop_map(|mut c| {
        c.insert(0, Q::from_integer(1.into()));
        SeriesTail::from_coeffs(c).unwrap()
    })
}

fn same(a: &SeriesTail<Q>, b: &SeriesTail<Q>) -> bool {
    a.try_eq(b).unwrap()
}

proptest! {
    #[test]
    fn multiplication_is_associative(a in series(), b in series(), c in series()) {
        let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
        let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn multiplication_distributes(a in series(), b in series(), c in series()) {
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn shift_is_a_ring_homomorphism(a in series(), b in series(), c in -4i64..=4) {
        let lhs = a.mul(&b).unwrap().shift(c);
        let rhs = a.shift(c).mul(&b.shift(c)).unwrap();
        prop_assert!(same(&lhs, &rhs));
        prop_assert!(same(&a.add(&b).unwrap().shift(c), &a.shift(c).add(&b.shift(c)).unwrap()));
    }

    #[test]
    fn shifts_compose(a in series(), c in -4i64..=4, d in -4i64..=4) {
        prop_assert!(same(&a.shift(c).shift(d), &a.shift(c + d)));
    }

    #[test]
    fn negating_the_argument_is_a_homomorphism(a in series(), b in series()) {
        let lhs = a.mul(&b).unwrap().negate_argument();
        let rhs = a.negate_argument().mul(&b.negate_argument()).unwrap();
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn derivative_obeys_leibniz(a in series(), b in series()) {
        let lhs = a.mul(&b).unwrap().derivative();
        let rhs = a.derivative().mul(&b).unwrap().add(&a.mul(&b.derivative()).unwrap()).unwrap();
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn inverse_is_two_sided(a in unit_series()) {
        let inv = a.inverse().unwrap();
        let one = SeriesTail::constant(Q::from_integer(1.into()), ORDER);
        prop_assert!(same(&a.mul(&inv).unwrap(), &one));
        prop_assert!(same(&inv.mul(&a).unwrap(), &one));
    }

    #[test]
    fn text_round_trip(a in series()) {
        let back = SeriesTail::<Q>::parse(&a.to_string()).unwrap();
        prop_assert!(same(&a, &back));
    }
}

#[test]
fn shift_of_u_inverse() {
    // (u+1)^-1 = u^-1 - u^-2 + u^-3 - ...
    let a = SeriesTail::<Q>::parse("u^-1 + O(u^-5)").unwrap();
    let want = SeriesTail::<Q>::parse("u^-1 - u^-2 + u^-3 - u^-4 + O(u^-5)").unwrap();
    assert!(same(&a.shift(1), &want));
}

#[test]
fn non_unit_constant_has_no_inverse() {
    let a = SeriesTail::<Q>::parse("2 + u^-1 + O(u^-3)").unwrap();
    assert!(a.inverse().is_err());
}

#[test]
fn mismatched_orders_are_rejected() {
    let a = SeriesTail::<Q>::parse("1 + O(u^-3)").unwrap();
    let b = SeriesTail::<Q>::parse("1 + O(u^-4)").unwrap();
    assert!(a.add(&b).is_err());
    assert!(a.mul(&b).is_err());
}
