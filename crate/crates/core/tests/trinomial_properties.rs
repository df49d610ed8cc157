use std::collections::BTreeMap;

use proptest::prelude::*;
use tririgid_core::classify::{case_tag, classify_rationality, classify_rigidity, heavy_set};
use tririgid_core::exactalg::{rat, Polynomial, Rational, Var};
use tririgid_core::lndlab::check_case_a_identity;
use tririgid_core::trinomial::{
    relations, torus_semi_invariant, trinomial_coefficients, validate, TrinomialDatum, VarietyType,
};

/// `count` distinct integers in [-9, 9], in random order.
fn distinct(count: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::sample::subsequence((-9i64..=9).collect::<Vec<_>>(), count).prop_shuffle()
}

fn tuples(count: usize, max_n: usize, max_l: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    proptest::collection::vec(proptest::collection::vec(1..=max_l, 1..=max_n), count)
}

/// Valid data of both types: Type 2 columns `(1, c_i)` with distinct
/// `c_i`, Type 1 with distinct constants.
fn datum() -> impl Strategy<Value = TrinomialDatum> {
    (2usize..=4, any::<bool>(), 0usize..=1).prop_flat_map(|(r, type2, m)| {
        let k = if type2 { r + 1 } else { r };
        (tuples(k, 3, 6), distinct(k)).prop_map(move |(exps, cs)| {
            let cs: Vec<Rational> = cs.into_iter().map(rat).collect();
            if type2 {
                TrinomialDatum::type2(m, exps, [vec![rat(1); cs.len()], cs])
            } else {
                TrinomialDatum::type1(m, exps, cs)
            }
        })
    })
}

fn surface() -> impl Strategy<Value = TrinomialDatum> {
    (2usize..=4).prop_flat_map(|r| {
        (tuples(r + 1, 1, 8), distinct(r + 1)).prop_map(|(exps, cs)| {
            TrinomialDatum::type2(
                0,
                exps,
                [vec![rat(1); cs.len()], cs.into_iter().map(rat).collect()],
            )
        })
    })
}

fn verdicts(d: &TrinomialDatum) -> (bool, bool, usize) {
    (
        classify_rigidity(d).unwrap().rigid,
        classify_rationality(d).unwrap().rational,
        heavy_set(d).len(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generated_data_are_valid(d in datum()) {
        prop_assert!(validate(&d).is_valid());
    }

    #[test]
    fn every_relation_has_three_terms(d in datum()) {
        for g in relations(&d).unwrap().relations {
            prop_assert_eq!(g.len(), 3);
        }
    }

    #[test]
    fn verdicts_ignore_tuple_order(d in datum(), seed in any::<u64>()) {
        let k = d.exponents.len();
        let mut perm: Vec<usize> = (0..k).collect();
        perm.rotate_left((seed as usize) % k);
        if seed & 1 == 1 {
            perm.swap(0, k - 1);
        }
        let inner = (seed as usize / 7) % k;
        let mut within: Vec<usize> = (0..d.exponents[inner].len()).collect();
        within.reverse();
        let e = d.permute_within(inner + d.q(), &within).permute_tuples(&perm);
        prop_assert!(validate(&e).is_valid());
        prop_assert_eq!(verdicts(&d), verdicts(&e));
        if d.variety_type == VarietyType::Type2 {
            prop_assert_eq!(case_tag(&d).unwrap(), case_tag(&e).unwrap());
        }
    }

    #[test]
    fn surfaces_are_torus_semi_invariant(d in surface()) {
        prop_assert!(torus_semi_invariant(&d).unwrap());
    }
}

/// Symbolic matrix entries `a_{ij}` as variables.
fn a(i: u32, j: u32) -> Polynomial {
    Polynomial::var(Var::t(i, j + 1))
}

fn sym_minor(u: u32, v: u32) -> Polynomial {
    &(&a(0, u) * &a(1, v)) - &(&a(0, v) * &a(1, u))
}

#[test]
fn gamma_identity_holds_symbolically() {
    // c1..c6 from the first-row cofactor expansion of the two relations
    let (c2, c3) = (-&sym_minor(0, 2), sym_minor(0, 1));
    let (c4, c5) = (sym_minor(2, 3), -&sym_minor(1, 3));
    let lhs = &(-&(&c4 * &c3)) + &(&c5 * &c2);
    let rhs = &sym_minor(0, 3) * &sym_minor(1, 2);
    assert_eq!(lhs, rhs);
}

#[test]
fn symbolic_coefficients_match_numeric_ones() {
    let rows = [[3i64, -1, 2, 5], [1, 4, -7, 2]];
    let d = TrinomialDatum::type2(
        0,
        vec![vec![2], vec![2], vec![2], vec![3]],
        [
            rows[0].iter().map(|&x| rat(x)).collect(),
            rows[1].iter().map(|&x| rat(x)).collect(),
        ],
    );
    let point: BTreeMap<Var, Polynomial> = (0..2u32)
        .flat_map(|i| (0..4u32).map(move |j| (i, j)))
        .map(|(i, j)| {
            (
                Var::t(i, j + 1),
                Polynomial::constant(rat(rows[i as usize][j as usize])),
            )
        })
        .collect();
    let eval = |p: Polynomial| p.substitute(&point).coefficient(&Default::default());
    let c = trinomial_coefficients(&d).unwrap();
    let expected = [
        [sym_minor(1, 2), -&sym_minor(0, 2), sym_minor(0, 1)],
        [sym_minor(2, 3), -&sym_minor(1, 3), sym_minor(1, 2)],
    ];
    for (row, exp) in c.iter().zip(expected) {
        for (x, e) in row.iter().zip(exp) {
            assert_eq!(*x, eval(e));
        }
    }
    let rep = check_case_a_identity(&d).unwrap();
    let product = eval(&sym_minor(0, 3) * &sym_minor(1, 2));
    assert_eq!(&rep.gamma1_sq * &c[1][2] * &c[0][2], product);
}
