use num_rational::BigRational as Q;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use yangian::algebra::{is_normal_word, normal_order_randomized, pbw_confluence, word_filt1};
use yangian::{Element, GenIndex, Monomial, Word, Yangian};

fn dims() -> impl Strategy<Value = (usize, usize)> {
    prop::sample::select(vec![(1, 1), (2, 1), (1, 2), (2, 0), (0, 2)])
}

fn raw_word(size: usize, max_len: usize) -> impl Strategy<Value = Vec<GenIndex>> {
    prop::collection::vec((1..=size, 1..=size, 1usize..=2), 0..=max_len)
        .prop_map(|v| v.into_iter().map(|(i, j, r)| GenIndex::new(i, j, r)).collect())
}

fn element(alg: &std::sync::Arc<Yangian<Q>>, words: &[(Vec<GenIndex>, i64)]) -> Element<Q> {
    Element::from_raw(alg, 1, words.iter().map(|(w, c)| (vec![Word::from_slice(w)], Q::from_integer((*c).into())))).unwrap()
}

fn max_filt1(x: &Element<Q>) -> u32 {
    x.terms().map(|(m, _)| m.filt1()).max().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_forms_consist_of_normal_words((m, n) in dims(), seed in any::<u64>()) {
        let y = Yangian::<Q>::new(m, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = yangian::algebra::random_raw_word(y.dims(), 5, &mut rng);
        for (nw, _) in y.normal_form_word(&w) {
            prop_assert!(is_normal_word(&nw, y.dims()));
            prop_assert!(word_filt1(&nw) <= word_filt1(&w));
        }
    }

    #[test]
    fn rewriting_is_confluent((m, n) in dims(), seed in any::<u64>()) {
        let y = Yangian::<Q>::new(m, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = yangian::algebra::random_raw_word(y.dims(), 6, &mut rng);
        let a = normal_order_randomized(&y, &w, &mut rng);
        let b = normal_order_randomized(&y, &w, &mut rng);
        let engine = Element::from_raw(&y, 1, [(vec![w.clone()], Q::from_integer(1.into()))]).unwrap();
        prop_assert_eq!(&a, &engine);
        prop_assert_eq!(&b, &engine);
    }

    #[test]
    fn multiplication_is_associative(a in raw_word(3, 2), b in raw_word(3, 2), c in raw_word(3, 2)) {
        let y = Yangian::<Q>::new(2, 1).unwrap();
        let (x, yy, z) = (element(&y, &[(a, 1)]), element(&y, &[(b, 2)]), element(&y, &[(c, -1)]));
        let lhs = x.mul(&yy).unwrap().mul(&z).unwrap();
        let rhs = x.mul(&yy.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_of_raw_words_is_the_normal_form_of_the_concatenation(a in raw_word(2, 3), b in raw_word(2, 3)) {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let lhs = element(&y, &[(a.clone(), 1)]).mul(&element(&y, &[(b.clone(), 1)])).unwrap();
        let cat: Vec<GenIndex> = a.iter().chain(&b).copied().collect();
        prop_assert_eq!(lhs, element(&y, &[(cat, 1)]));
    }

    #[test]
    fn filtration_and_parity_are_multiplicative(a in raw_word(3, 3), b in raw_word(3, 3)) {
        let y = Yangian::<Q>::new(1, 2).unwrap();
        let (x, z) = (element(&y, &[(a, 1)]), element(&y, &[(b, 1)]));
        let prod = x.mul(&z).unwrap();
        prop_assert!(max_filt1(&prod) <= max_filt1(&x) + max_filt1(&z));
        if let (Some(p), Some(q)) = (x.parity(), z.parity()) {
            if !prod.is_zero() {
                prop_assert_eq!(prod.parity(), Some((p + q) % 2));
            }
        }
    }

    #[test]
    fn supercommutator_is_graded_antisymmetric(a in raw_word(2, 2), b in raw_word(2, 2)) {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let (x, z) = (element(&y, &[(a, 1)]), element(&y, &[(b, 1)]));
        let (px, pz) = (x.parity().unwrap_or(0), z.parity().unwrap_or(0));
        let lhs = x.supercommutator(&z).unwrap();
        let mut rhs = z.supercommutator(&x).unwrap();
        if px * pz == 0 {
            rhs = rhs.neg();
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn text_round_trip(a in raw_word(3, 3), b in raw_word(3, 2), c in -5i64..=5) {
        let y = Yangian::<Q>::new(2, 1).unwrap();
        let x = element(&y, &[(a, c), (b, 3)]);
        prop_assert_eq!(Element::parse(&y, &x.to_string()).unwrap(), x);
    }
}

#[test]
fn odd_generator_squares_to_half_its_supercommutator() {
    let y = Yangian::<Q>::new(1, 1).unwrap();
    let x = Element::generator(&y, 1, 2, 2);
    let sq = x.mul(&x).unwrap();
    let half = x.supercommutator(&x).unwrap().scale(&Q::new(1.into(), 2.into()));
    assert_eq!(sq, half);
    assert!(!sq.terms().any(|(m, _)| m.words()[0].len() == 2 && m.words()[0][0] == m.words()[0][1]));
}

#[test]
fn unit_monomial_is_the_identity() {
    let y = Yangian::<Q>::new(2, 1).unwrap();
    let x = Element::parse(&y, "T[1,3,2]*T[2,1,1] - 1/2*T[3,3,1]").unwrap();
    let one = Element::unit(&y, 1);
    assert_eq!(one.mul(&x).unwrap(), x);
    assert_eq!(x.mul(&one).unwrap(), x);
    assert!(one.terms().all(|(m, _)| m == &Monomial::empty(1)));
}

#[test]
fn confluence_over_a_thousand_schedules() {
    for (m, n) in [(1, 1), (2, 1), (0, 3)] {
        let y = Yangian::<Q>::new(m, n).unwrap();
        let rep = pbw_confluence(&y, 250, 4, 6, 5);
        assert!(rep.passed, "{rep}");
        assert_eq!(rep.items_checked, 1000);
    }
}
