use binform::exact_poly::{
    det, det_bareiss, det_cofactor, det_minors, format_plain, parse, rat, Monomial, Polynomial, Series, Variable,
};
use proptest::prelude::*;

fn variable() -> impl Strategy<Value = Variable> {
    prop_oneof![
        4 => (0usize..4, 0u32..13).prop_map(|(s, i)| Series::ALL[s].at(i)),
        1 => Just(Variable::X),
    ]
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec((variable(), 1u32..4), 0..4).prop_map(Monomial::from_pairs)
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(), -9i64..10, 1i64..5), 0..6)
        .prop_map(|terms| Polynomial::from_terms(terms.into_iter().map(|(m, p, q)| (m, rat(p, q)))))
}

fn small_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u32..3).prop_map(|i| Series::A.at(i)), -3i64..4), 0..3).prop_map(|terms| {
        terms.into_iter().map(|(v, c)| Polynomial::var(v).scale(&rat(c, 1))).sum()
    })
}

fn matrix(k: usize) -> impl Strategy<Value = Vec<Vec<Polynomial>>> {
    prop::collection::vec(prop::collection::vec(small_poly(), k), k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &Polynomial::one(), p.clone());
        prop_assert_eq!(&p + &Polynomial::zero(), p.clone());
    }

    #[test]
    fn derivative_is_a_derivation(p in poly(), q in poly(), v in variable()) {
        let lhs = (&p * &q).partial(v);
        let rhs = &(&p.partial(v) * &q) + &(&p * &q.partial(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_division_inverts_multiplication(p in poly(), q in poly()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).div_exact(&q).unwrap(), p);
    }

    #[test]
    fn plain_text_round_trips(p in poly()) {
        prop_assert_eq!(parse(&format_plain(&p)).unwrap(), p);
    }

    #[test]
    fn json_round_trips(p in poly()) {
        let text = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Polynomial>(&text).unwrap(), p);
    }

    #[test]
    fn determinant_routes_agree(m in (1usize..6).prop_flat_map(matrix)) {
        let reference = det_cofactor(&m).unwrap();
        prop_assert_eq!(det_bareiss(&m).unwrap(), reference.clone());
        prop_assert_eq!(det_minors(&m).unwrap(), reference.clone());
        prop_assert_eq!(det(&m).unwrap(), reference);
    }

    #[test]
    fn transposition_and_row_swaps(m in matrix(4)) {
        let d = det_minors(&m).unwrap();
        let t: Vec<Vec<Polynomial>> = (0..4).map(|c| (0..4).map(|r| m[r][c].clone()).collect()).collect();
        prop_assert_eq!(det_minors(&t).unwrap(), d.clone());
        let mut swapped = m.clone();
        swapped.swap(0, 3);
        prop_assert_eq!(det_bareiss(&swapped).unwrap(), -d);
    }
}

#[test]
fn vandermonde_five() {
    let xs: Vec<Polynomial> = (0..5).map(|i| Polynomial::var(Series::A.at(i))).collect();
    let m: Vec<Vec<Polynomial>> = xs.iter().map(|x| (0..5).map(|e| x.pow(e)).collect()).collect();
    let mut expected = Polynomial::one();
    for i in 0..5 {
        for j in i + 1..5 {
            expected = &expected * &(&xs[j] - &xs[i]);
        }
    }
    assert_eq!(det(&m).unwrap(), expected);
    assert_eq!(det_bareiss(&m).unwrap(), expected);
}
