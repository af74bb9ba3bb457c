//! Property-based checks for the exact algebraic identities.

use proptest::prelude::*;
use slice_harmonics::combinatorics::enumerate_top_sets_up_to;
use slice_harmonics::expansion::{
    average_first_m, expand, moments, slice_size, synthesize, SliceFunction, YoungExpansion,
};
use slice_harmonics::measures::{inner_product, ExchangeableMeasure};
use slice_harmonics::operators::{
    adjacent_transposition_expansion, apply_transposition, influence_spectral, tau_coefficient,
    lambda_coefficient, total_influence_m,
};
use slice_harmonics::poly::MultilinearPolynomial;
use slice_harmonics::{rat, Rational};

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

fn arb_slice() -> impl Strategy<Value = (usize, usize)> {
    prop::sample::select(vec![(2, 1), (4, 2), (5, 2), (6, 3), (7, 2)])
}

fn arb_function() -> impl Strategy<Value = SliceFunction> {
    arb_slice().prop_flat_map(|(n, k)| {
        prop::collection::vec(arb_rational(), slice_size(n, k))
            .prop_map(move |vals| SliceFunction::from_lex_values(n, k, vals).unwrap())
    })
}

fn arb_expansion() -> impl Strategy<Value = YoungExpansion> {
    arb_slice().prop_flat_map(|(n, k)| {
        let tops = enumerate_top_sets_up_to(n, k);
        let len = tops.len();
        prop::collection::vec(arb_rational(), len).prop_map(move |coeffs| {
            YoungExpansion::new(n, k, tops.iter().cloned().zip(coeffs)).unwrap()
        })
    })
}

fn arb_polynomial() -> impl Strategy<Value = MultilinearPolynomial> {
    let monomial = prop::collection::btree_set(1usize..=5, 0..3);
    prop::collection::vec((monomial, arb_rational()), 0..6).prop_map(|terms| {
        MultilinearPolynomial::from_terms(
            5,
            terms
                .into_iter()
                .map(|(m, c)| (m.into_iter().collect::<Vec<_>>(), c)),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expand_then_synthesize_is_identity(f in arb_function()) {
        prop_assert_eq!(synthesize(&expand(&f)), f);
    }

    #[test]
    fn synthesize_then_expand_is_identity(e in arb_expansion()) {
        prop_assert_eq!(expand(&synthesize(&e)), e);
    }

    #[test]
    fn parseval_l2_matches_pointwise(f in arb_function()) {
        let m = moments(&expand(&f));
        prop_assert_eq!(m.l2, f.norm_sq());
        prop_assert_eq!(m.mean, f.mean());
    }

    #[test]
    fn expansion_is_linear(f in arb_function(), c in arb_rational()) {
        let g = apply_transposition(&f, 1, 2).unwrap();
        let combo = f.add(&g.scale(&c)).unwrap();
        let lhs = expand(&combo);
        let rhs = expand(&f).add(&expand(&g).scale(&c)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn averaging_filters_and_is_idempotent(e in arb_expansion(), m_seed in 1usize..=7) {
        let m = 1 + (m_seed - 1) % e.n();
        let avg = average_first_m(&e, m).unwrap();
        for b in avg.coefficients().keys() {
            prop_assert!(b.entries().iter().all(|&x| x > m));
        }
        prop_assert_eq!(average_first_m(&avg, m).unwrap(), avg.clone());
        // full symmetrization keeps only the mean
        let full = average_first_m(&e, e.n()).unwrap();
        prop_assert!(full.coefficients().len() <= 1);
        prop_assert_eq!(moments(&full).mean, moments(&e).mean);
    }

    #[test]
    fn polynomial_inner_product_matches_point_summation(
        p in arb_polynomial(),
        q in arb_polynomial(),
        k in 1usize..=2,
    ) {
        let measure = ExchangeableMeasure::uniform_slice(5, k).unwrap();
        let via_moments = inner_product(&p, &q, &measure).unwrap();
        let fp = SliceFunction::from_polynomial(&p, k).unwrap();
        let fq = SliceFunction::from_polynomial(&q, k).unwrap();
        prop_assert_eq!(via_moments, fp.inner_product(&fq).unwrap());
    }

    #[test]
    fn total_influence_equals_spectral(f in arb_function(), m_seed in 0usize..=5) {
        let m = 2 + m_seed % (f.n() - 1);
        let combinatorial = total_influence_m(&f, m).unwrap();
        let spectral = influence_spectral(&expand(&f), m).unwrap();
        prop_assert_eq!(combinatorial, spectral);
    }

    #[test]
    fn adjacent_rewrite_matches_direct_swap(e in arb_expansion(), m_seed in 1usize..=6) {
        let m = 1 + (m_seed - 1) % (e.n() - 1);
        let rewritten = adjacent_transposition_expansion(&e, m).unwrap();
        let direct = apply_transposition(&synthesize(&e), m, m + 1).unwrap();
        prop_assert_eq!(synthesize(&rewritten), direct);
        // applying the rewrite twice is the identity
        prop_assert_eq!(
            adjacent_transposition_expansion(&rewritten, m).unwrap(),
            e.clone()
        );
    }

    #[test]
    fn tau_is_prefix_sum_of_lambda(e in arb_expansion(), m_seed in 0usize..=5) {
        let m = 2 + m_seed % (e.n() - 1);
        for b in e.coefficients().keys() {
            let total: i64 = (2..=m).map(|j| lambda_coefficient(b, j)).sum();
            prop_assert_eq!(tau_coefficient(b, m), total);
        }
    }
}
