use binform::exact_poly::{rat, Monomial, Polynomial, Series};
use binform::forms::{
    derive_d, derive_dstar, derive_e, is_covariant, kappa, kappa_inv, semi_transvectant, weight, FormContext,
    SemiInvariant,
};
use proptest::prelude::*;

fn ctx(n: u32) -> FormContext {
    FormContext::new(n, [Series::A, Series::B]).unwrap()
}

fn coeff_poly(n: u32) -> impl Strategy<Value = Polynomial> {
    let var = (0usize..2, 0..=n).prop_map(|(s, i)| Series::ALL[s].at(i));
    let mono = prop::collection::vec((var, 1u32..3), 0..4).prop_map(Monomial::from_pairs);
    prop::collection::vec((mono, -6i64..7), 0..5)
        .prop_map(|terms| Polynomial::from_terms(terms.into_iter().map(|(m, c)| (m, rat(c, 1)))))
}

fn lead(n: u32, s: Series) -> SemiInvariant {
    SemiInvariant::certify(Polynomial::var(s.at(0)), &FormContext::single(n, s).unwrap()).unwrap()
}

/// Small semi-invariants of two forms of order `n`: leading coefficients,
/// their semi-transvectants and pairwise products.
fn generators(n: u32) -> Vec<SemiInvariant> {
    let (a, b) = (lead(n, Series::A), lead(n, Series::B));
    let mut out = vec![a.clone(), b.clone()];
    for (p, q) in [(&a, &a), (&a, &b), (&b, &b)] {
        for r in 1..=n.min(2) {
            let t = semi_transvectant(p, q, r).unwrap();
            if !t.is_zero() {
                out.push(t);
            }
        }
    }
    let base = out.clone();
    for p in base.iter().take(4) {
        for q in base.iter().take(4) {
            let ctx = p.context().union(q.context()).unwrap();
            out.push(SemiInvariant::certify(p.poly() * q.poly(), &ctx).unwrap());
        }
    }
    out
}

fn pair() -> impl Strategy<Value = (SemiInvariant, SemiInvariant, u32)> {
    (2u32..6).prop_flat_map(|n| {
        let gens = generators(n);
        let k = gens.len();
        (Just(gens), 0..k, 0..k).prop_flat_map(|(gens, i, j)| {
            let (p, q) = (gens[i].clone(), gens[j].clone());
            let max = p.ord().min(q.ord());
            (Just(p), Just(q), 0..=max)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn derivations_obey_leibniz((n, p, q) in (1u32..6).prop_flat_map(|n| (Just(n), coeff_poly(n), coeff_poly(n)))) {
        let c = ctx(n);
        let pq = &p * &q;
        for op in [derive_d, derive_dstar, derive_e] {
            let lhs = op(&pq, &c).unwrap();
            let rhs = &(&op(&p, &c).unwrap() * &q) + &(&p * &op(&q, &c).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn commutator_relations(p in coeff_poly(4)) {
        let c = ctx(4);
        let d = |x: &Polynomial| derive_d(x, &c).unwrap();
        let ds = |x: &Polynomial| derive_dstar(x, &c).unwrap();
        let e = |x: &Polynomial| derive_e(x, &c).unwrap();
        prop_assert_eq!(&d(&ds(&p)) - &ds(&d(&p)), e(&p));
        prop_assert_eq!(&e(&d(&p)) - &d(&e(&p)), d(&p).scale(&rat(2, 1)));
    }

    #[test]
    fn semi_transvectant_antisymmetry((p, q, r) in pair()) {
        let pq = semi_transvectant(&p, &q, r).unwrap();
        let qp = semi_transvectant(&q, &p, r).unwrap();
        let sign = if r % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
        prop_assert_eq!(pq.poly().clone(), qp.poly().scale(&sign));
    }

    #[test]
    fn odd_self_transvectants_vanish((p, _q, r) in pair()) {
        prop_assume!(r % 2 == 1);
        prop_assert!(semi_transvectant(&p, &p, r).unwrap().is_zero());
    }

    #[test]
    fn weights_add((p, q, r) in pair()) {
        let t = semi_transvectant(&p, &q, r).unwrap();
        prop_assume!(!t.is_zero());
        let expected = p.weight() + q.weight() - 2 * r as i64;
        prop_assert_eq!(weight(t.poly(), t.context()), Some(expected));
        prop_assert_eq!(t.weight(), expected);
        prop_assert_eq!(t.ord() as i64, expected);
        prop_assert!(derive_d(t.poly(), t.context()).unwrap().is_zero());
    }

    #[test]
    fn kappa_round_trip((p, q, r) in pair()) {
        let t = semi_transvectant(&p, &q, r).unwrap();
        let cov = kappa_inv(&t);
        prop_assert!(is_covariant(&cov, t.context()));
        prop_assert_eq!(kappa(&cov).unwrap(), t.poly().clone());
    }
}

#[test]
fn lead_coefficient_covariant_is_the_form() {
    let c = FormContext::single(3, Series::A).unwrap();
    let cov = kappa_inv(&lead(3, Series::A));
    assert_eq!(cov, binform::forms::generic_form(&c, Series::A).unwrap());
}
