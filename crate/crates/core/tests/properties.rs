use std::collections::HashMap;

use num_bigint::BigUint;
use proptest::prelude::*;

use lg_periods::expr::parse_polynomial;
use lg_periods::frobenius::{enumerate_s_partitions, multinomial, SPartition};
use lg_periods::mutation::{mutate, w_decompose, MutationData, MutationOutcome};
use lg_periods::period::{classical_period, classical_period_bruteforce};
use lg_periods::ring::{ratio, rational};
use lg_periods::{Coefficient, CurveClass, CurveClassMonoid, LaurentPoly, MoriElement, Rational};

fn terms_strategy(
    rank: usize,
    max_terms: usize,
    max_exp: i32,
) -> impl Strategy<Value = Vec<(Vec<i32>, Rational)>> {
    prop::collection::vec(
        (
            prop::collection::vec(-max_exp..=max_exp, rank),
            (-4i64..=4, 1i64..=3).prop_map(|(n, d)| ratio(n, d)),
        ),
        0..=max_terms,
    )
}

fn poly_strategy(
    rank: usize,
    max_terms: usize,
    max_exp: i32,
) -> impl Strategy<Value = LaurentPoly<Rational>> {
    terms_strategy(rank, max_terms, max_exp)
        .prop_map(move |t| LaurentPoly::normalize(rank, t).unwrap())
}

fn ranked_poly() -> impl Strategy<Value = LaurentPoly<Rational>> {
    (1usize..=3).prop_flat_map(|n| poly_strategy(n, 5, 3))
}

fn unimodular(rank: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0..rank, 0..rank, -2i64..=2, 0u8..3), 0..8).prop_map(move |ops| {
        let mut m: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        for (i, j, k, kind) in ops {
            match kind {
                0 if i != j => {
                    let row = m[j].clone();
                    for (x, y) in m[i].iter_mut().zip(&row) {
                        *x += k * y;
                    }
                }
                1 => m.swap(i, j),
                _ => m[i].iter_mut().for_each(|x| *x = -*x),
            }
        }
        m
    })
}

fn mori_strategy(rank: usize) -> impl Strategy<Value = MoriElement> {
    prop::collection::vec((prop::collection::vec(0u32..4, rank), -5i64..=5), 0..5).prop_map(
        |terms| {
            MoriElement::from_terms(
                terms
                    .into_iter()
                    .map(|(m, c)| (CurveClass::new(m), rational(c))),
            )
        },
    )
}

fn monoid_and_pair() -> impl Strategy<Value = (CurveClassMonoid, MoriElement, MoriElement)> {
    (1usize..=3).prop_flat_map(|r| {
        (
            prop::collection::vec(1i64..=3, r).prop_map(|w| CurveClassMonoid::new(w).unwrap()),
            mori_strategy(r),
            mori_strategy(r),
        )
    })
}

/// Constant term of `f·g` read off as `Σ_m f_m g_{-m}`.
fn pairing_constant(f: &LaurentPoly<Rational>, g: &LaurentPoly<Rational>) -> Rational {
    let lookup: HashMap<Vec<i32>, Rational> = g
        .terms()
        .map(|(m, c)| (m.exponents().to_vec(), c.clone()))
        .collect();
    let mut sum = rational(0);
    for (m, c) in f.terms() {
        let neg: Vec<i32> = m.exponents().iter().map(|e| -e).collect();
        if let Some(d) = lookup.get(&neg) {
            sum += c * d;
        }
    }
    sum
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(
        (a, b, c) in (1usize..=3).prop_flat_map(|n| (poly_strategy(n, 4, 2), poly_strategy(n, 4, 2), poly_strategy(n, 4, 2)))
    ) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, LaurentPoly::zero(a.rank()));
        prop_assert_eq!(&a * &LaurentPoly::one(a.rank()), a.clone());
    }

    #[test]
    fn normalize_is_idempotent(terms in terms_strategy(2, 8, 3)) {
        let p = LaurentPoly::normalize(2, terms).unwrap();
        let again = LaurentPoly::normalize(
            2,
            p.terms().map(|(m, c)| (m.exponents().to_vec(), c.clone())),
        )
        .unwrap();
        prop_assert!(p.terms().all(|(_, c)| !c.is_zero()));
        prop_assert_eq!(again, p);
    }

    #[test]
    fn constant_term_of_product(
        (f, g) in (1usize..=3).prop_flat_map(|n| (poly_strategy(n, 6, 3), poly_strategy(n, 6, 3)))
    ) {
        prop_assert_eq!((&f * &g).constant_term(), pairing_constant(&f, &g));
    }

    #[test]
    fn pruned_period_matches_bruteforce(f in ranked_poly()) {
        prop_assert_eq!(classical_period(&f, 6), classical_period_bruteforce(&f, 6));
    }

    #[test]
    fn unimodular_invariance(
        (f, a) in (1usize..=3).prop_flat_map(|n| (poly_strategy(n, 5, 2), unimodular(n)))
    ) {
        let g = f.substitute_unimodular(&a).unwrap();
        prop_assert_eq!(g.len(), f.len());
        prop_assert_eq!(classical_period(&g, 5), classical_period(&f, 5));
    }

    #[test]
    fn specialization_is_a_homomorphism((monoid, a, b) in monoid_and_pair()) {
        let sa = monoid.specialize(&a);
        let sb = monoid.specialize(&b);
        prop_assert_eq!(monoid.specialize(&a.add_ref(&b)), sa.add_ref(&sb));
        prop_assert_eq!(monoid.specialize(&a.mul_ref(&b)), sa.mul_ref(&sb));
        prop_assert_eq!(monoid.specialize(&MoriElement::unit(monoid.rank())), lg_periods::UniPoly::one());
    }

    #[test]
    fn truncation_drops_high_degrees((monoid, a, _b) in monoid_and_pair(), k in 0u64..8) {
        let t = monoid.truncate(&a, k);
        prop_assert!(t.classes().all(|c| monoid.degree(c) <= k));
        let full = monoid.specialize(&a);
        let cut = monoid.specialize(&t);
        for j in 0..=k as usize + 4 {
            let expected = if j as u64 <= k { full.coeff(j) } else { rational(0) };
            prop_assert_eq!(cut.coeff(j), expected);
        }
    }

    #[test]
    fn multinomials_sum_to_power(d in 0u32..=10, s in 1usize..=5) {
        let total: BigUint = enumerate_s_partitions(d, s)
            .iter()
            .map(|p| multinomial(d, p).unwrap())
            .sum();
        prop_assert_eq!(total, BigUint::from(s).pow(d));
        prop_assert_eq!(
            enumerate_s_partitions(d, s).len() as u64,
            binomial(u64::from(d) + s as u64 - 1, s as u64 - 1)
        );
    }

    #[test]
    fn multinomial_is_symmetric(parts in prop::collection::vec(0u32..5, 1..5), seed in any::<u64>()) {
        let d = parts.iter().sum();
        let mut shuffled = parts.clone();
        shuffled.rotate_left((seed as usize) % parts.len());
        shuffled.reverse();
        prop_assert_eq!(
            multinomial(d, &SPartition::new(parts)).unwrap(),
            multinomial(d, &SPartition::new(shuffled)).unwrap()
        );
    }

    #[test]
    fn print_parse_round_trip(f in ranked_poly()) {
        let text = f.to_string();
        prop_assert_eq!(parse_polynomial(&text, Some(f.rank())).unwrap(), f);
    }

    #[test]
    fn decomposition_partitions_support(f in poly_strategy(2, 6, 3), w in (-3i64..=3, -3i64..=3)) {
        let w = vec![w.0, w.1];
        let pieces = w_decompose(&f, &w);
        let mut total = LaurentPoly::zero(2);
        for (k, piece) in &pieces {
            prop_assert!(piece.support().all(|m| m.pairing(&w) == *k));
            total = &total + piece;
        }
        prop_assert_eq!(total, f);
    }

    #[test]
    fn identity_mutation_and_involution(
        f in poly_strategy(2, 5, 2),
        g in poly_strategy(2, 4, 2),
    ) {
        let w = vec![0, -1];
        let identity = MutationData::new(w.clone(), LaurentPoly::one(2)).unwrap();
        prop_assert_eq!(mutate(&f, &identity).unwrap(), MutationOutcome::Mutated(f.clone()));

        let h = parse_polynomial("1 + x", Some(2)).unwrap();
        let lifted = &(&LaurentPoly::variable(2, 1) * &(&h * &g)) + &f;
        let data = MutationData::new(w, h).unwrap();
        if let MutationOutcome::Mutated(m) = mutate(&lifted, &data).unwrap() {
            prop_assert_eq!(mutate(&m, &data.inverse()).unwrap(), MutationOutcome::Mutated(lifted.clone()));
            prop_assert_eq!(classical_period(&m, 5), classical_period(&lifted, 5));
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
