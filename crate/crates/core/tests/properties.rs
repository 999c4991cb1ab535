mod common;

use proptest::prelude::*;

use common::*;
use ntl_core::algebra::coxeter_element;
use ntl_core::laurent::rat;
use ntl_core::rep::{psi, psi_inv, raise_ideal};
use ntl_core::*;

fn d(n: usize) -> Diagram {
    Diagram::new(n).unwrap()
}

/// `(n, word)` with letters in `0..=n`.
fn word_strategy(ns: std::ops::RangeInclusive<usize>, max_len: usize) -> impl Strategy<Value = (usize, Vec<usize>)> {
    ns.prop_flat_map(move |n| (Just(n), prop::collection::vec(0..=n, 0..=max_len)))
}

/// Appends the candidate letters in turn, skipping any that would leave
/// the minuscule words; minuscule words are prefix closed.
fn grow_minuscule(n: usize, candidates: &[usize], max_len: usize) -> Vec<usize> {
    let mut oracle = MinusculeOracle::new(n);
    let mut w = Vec::new();
    for &x in candidates {
        if w.len() == max_len {
            break;
        }
        w.push(x);
        if !oracle.is_minuscule(&w) {
            w.pop();
        }
    }
    w
}

fn minuscule_strategy(ns: std::ops::RangeInclusive<usize>, max_len: usize) -> impl Strategy<Value = (usize, Vec<usize>)> {
    (ns, 0..=max_len).prop_flat_map(move |(n, len)| {
        prop::collection::vec(0..=n, 4 * max_len).prop_map(move |c| (n, grow_minuscule(n, &c, len)))
    })
}

/// A random combination of up to four words with small integer coefficients.
fn element(n: usize, parts: &[(i64, Vec<usize>)]) -> TElement {
    let dn = d(n);
    parts.iter().fold(TElement::zero(dn), |acc, (c, w)| {
        let x = TElement::word(dn, &Word(w.iter().map(|&l| l % (n + 1)).collect())).unwrap();
        acc.add(&x.scale(&rat(*c, 1))).unwrap()
    })
}

fn parts_strategy() -> impl Strategy<Value = Vec<(i64, Vec<usize>)>> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(0usize..6, 0..=6)), 0..=4)
}

/// A proper-ideal boundary: parity `h_p = p mod 2`, unit steps.
fn boundary_strategy() -> impl Strategy<Value = Vec<i64>> {
    (2usize..=5, -4i64..=4).prop_flat_map(|(n, c)| {
        prop::collection::vec(any::<bool>(), n).prop_map(move |steps| {
            let mut h = vec![2 * c];
            for up in steps {
                let last = *h.last().unwrap();
                h.push(if up { last + 1 } else { last - 1 });
            }
            h
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_is_idempotent_and_keeps_letters((n, w) in word_strategy(2..=5, 10)) {
        let dn = d(n);
        let cf = cf_normal_form(dn, &Word(w.clone())).unwrap();
        prop_assert_eq!(&cf_normal_form(dn, &cf).unwrap(), &cf);
        let mut a = w.clone();
        let mut b = cf.0.clone();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn normal_form_is_a_class_invariant((n, w) in word_strategy(2..=4, 7)) {
        let dn = d(n);
        let cf = cf_normal_form(dn, &Word(w.clone())).unwrap();
        let class = commutation_class(&w);
        prop_assert!(class.contains(&cf.0));
        for x in class {
            prop_assert_eq!(&cf_normal_form(dn, &Word(x)).unwrap(), &cf);
        }
    }

    #[test]
    fn minuscule_test_matches_subword_oracle((n, w) in word_strategy(2..=5, 10)) {
        let expect = MinusculeOracle::new(n).is_minuscule(&w);
        prop_assert_eq!(is_minuscule(d(n), &Word(w)), expect);
    }

    #[test]
    fn heaps_embed_as_convex_regions((n, w) in minuscule_strategy(2..=3, 10)) {
        let dn = d(n);
        let word = Word(w.clone());
        let region = rank_and_embed(dn, &word).unwrap();
        prop_assert_eq!(region.len(), w.len());
        prop_assert!(is_convex_region(dn, &region).unwrap());
        if word.has_full_support(dn) {
            // reading the region top down gives a word of the same class
            prop_assert!(commutation_class(&w).contains(&region.to_word().0));
        }
        let heap = heap_from_word(dn, &word).unwrap();
        prop_assert!(heap.is_alternating(dn));
        for (lo, hi) in heap.covers() {
            prop_assert_eq!(heap.label(lo).abs_diff(heap.label(hi)), 1);
        }
    }

    #[test]
    fn multiplication_is_associative(
        n in 2usize..=3,
        a in parts_strategy(),
        b in parts_strategy(),
        c in parts_strategy(),
    ) {
        let (a, b, c) = (element(n, &a), element(n, &b), element(n, &c));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn matrix_of_is_a_homomorphism(n in 2usize..=3, a in parts_strategy(), b in parts_strategy()) {
        let (a, b) = (element(n, &a), element(n, &b));
        prop_assert_eq!(matrix_of(&a.mul(&b).unwrap()), matrix_of(&a).mul(&matrix_of(&b)));
        prop_assert_eq!(matrix_of(&a.add(&b).unwrap()), matrix_of(&a).add(&matrix_of(&b)));
    }

    #[test]
    fn basis_matrices_are_partial_monomial((n, w) in minuscule_strategy(2..=4, 10)) {
        let m = matrix_of(&TElement::basis(d(n), &Word(w.clone())).unwrap());
        let mut cols = std::collections::BTreeSet::new();
        for (_, col, p) in m.entries() {
            let (e, c) = p.as_monomial().unwrap();
            prop_assert!(e >= 0);
            prop_assert_eq!(c, &rat(1, 1));
            prop_assert!(cols.insert(col));
        }
        prop_assert_eq!(m.entries().count(), word_matrix(n, &w).len());
    }

    #[test]
    fn q_is_central_and_raises_valuation((n, w) in minuscule_strategy(2..=4, 8)) {
        let dn = d(n);
        let q = q_element(dn);
        let x = TElement::basis(dn, &Word(w)).unwrap();
        let qx = q.mul(&x).unwrap();
        prop_assert_eq!(&qx, &x.mul(&q).unwrap());
        prop_assert_eq!(qx.q_valuation().unwrap(), x.q_valuation().unwrap() + 1);
        prop_assert_eq!(qx.divide_by_q(), Some(x));
    }

    #[test]
    fn sandwich_weight_is_unique((n, w) in minuscule_strategy(2..=3, 6), k in any::<usize>()) {
        let dn = d(n);
        let lambda = Weight::from_index(n, k % (1 << n));
        let x = TElement::basis(dn, &Word(w)).unwrap();
        let left = coxeter_element(dn, &lambda).unwrap().mul(&x).unwrap();
        if !left.is_zero() {
            let matches = Weight::all(n)
                .into_iter()
                .filter(|mu| x.mul(&coxeter_element(dn, mu).unwrap()).unwrap() == left)
                .count();
            prop_assert_eq!(matches, 1);
        }
    }

    #[test]
    fn psi_round_trips_and_matches_strings(h in boundary_strategy()) {
        let n = h.len() - 1;
        let j = IdealBoundary::new(h.clone()).unwrap();
        let (c, lambda) = psi(&j);
        prop_assert_eq!(c * 2, h[0]);
        prop_assert_eq!(&psi_inv(c, &lambda), &j);
        for i in 0..=n {
            let raised = raise_ideal(d(n), i, &j).unwrap();
            let action = act_letter(n, i, &lambda.to_string());
            match (raised, action) {
                (None, None) => {}
                (Some(k), Some((s, e))) => {
                    let (c2, mu) = psi(&k);
                    prop_assert_eq!((c2, mu.to_string()), (c + e, s));
                }
                (got, want) => prop_assert!(false, "u_{} on {:?}: {:?} vs {:?}", i, h, got, want),
            }
        }
    }

    #[test]
    fn elements_round_trip_through_json(n in 2usize..=3, a in parts_strategy()) {
        let a = element(n, &a);
        let text = a.to_json().unwrap();
        prop_assert_eq!(&TElement::from_json(d(n), &text).unwrap(), &a);
        let m = matrix_of(&a);
        prop_assert_eq!(WeightMatrix::from_json(&m.to_json()).unwrap(), m);
    }
}

#[test]
fn coxeter_idempotents_sum_to_q() {
    for n in 2..=4 {
        let dn = d(n);
        let sum = Weight::all(n).iter().fold(WeightMatrix::zero(n), |acc, l| {
            acc.add(&matrix_of(&coxeter_element(dn, l).unwrap()))
        });
        assert_eq!(sum, WeightMatrix::scalar(n, LaurentPoly::q()));
    }
}

#[test]
fn bond_table() {
    for n in 2..=6 {
        let dn = d(n);
        for i in 0..=n {
            for j in 0..=n {
                let expect = if i == j {
                    1
                } else if i.abs_diff(j) > 1 {
                    2
                } else if i.min(j) == 0 || i.max(j) == n {
                    4
                } else {
                    3
                };
                assert_eq!(dn.bond(i, j), expect, "n = {n}, ({i}, {j})");
            }
        }
    }
}
