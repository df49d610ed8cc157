//! Trinomial data, validation and the derived algebraic objects: relation
//! polynomials, coefficient triples, gcd vectors, torus weights and the
//! surface-case elimination of a linear monomial.

mod datum;
mod validate;

pub use datum::{Coefficients, TrinomialDatum, VarietyType};
pub use validate::{validate, ValidationReport, Violation};

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

use crate::exactalg::{Monomial, Polynomial, Rational, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrinomialError {
    #[error("invalid datum: {0}")]
    InvalidDatum(ValidationReport),
    #[error("operation requires a Type 2 datum")]
    NotType2,
    #[error("operation requires a Type 2 surface (m = 0, every tuple of length 1, r >= 2)")]
    NotSurface,
    #[error("tuple {index} has exponent {exponent}, expected 1")]
    ExponentNotOne { index: usize, exponent: u32 },
    #[error("tuple index {0} out of range")]
    IndexOutOfRange(usize),
}

fn ensure_valid(d: &TrinomialDatum) -> Result<(), TrinomialError> {
    let report = validate(d);
    if report.is_valid() {
        Ok(())
    } else {
        Err(TrinomialError::InvalidDatum(report))
    }
}

/// The relations `g_i`, `i` ranging over the datum's index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    pub relations: Vec<Polynomial>,
    pub index_set: Vec<usize>,
}

impl RelationSet {
    pub fn get(&self, i: usize) -> Option<&Polynomial> {
        self.index_set
            .iter()
            .position(|&k| k == i)
            .map(|p| &self.relations[p])
    }
}

/// `a_{0u} a_{1v} - a_{0v} a_{1u}` for columns `u` and `v`.
pub fn minor(d: &TrinomialDatum, u: usize, v: usize) -> Rational {
    let (a0u, a1u) = d.column(u);
    let (a0v, a1v) = d.column(v);
    a0u * a1v - a0v * a1u
}

/// Coefficients of `T_i^{l_i}`, `T_{i+1}^{l_{i+1}}`, `T_{i+2}^{l_{i+2}}` in
/// the first-row cofactor expansion of the Type 2 determinant.
fn type2_triple(d: &TrinomialDatum, i: usize) -> [Rational; 3] {
    [
        minor(d, i + 1, i + 2),
        -minor(d, i, i + 2),
        minor(d, i, i + 1),
    ]
}

pub fn relations(d: &TrinomialDatum) -> Result<RelationSet, TrinomialError> {
    ensure_valid(d)?;
    let mut relations = Vec::new();
    let mut index_set = Vec::new();
    match &d.coefficients {
        Coefficients::Type1(a) => {
            for i in 1..d.r {
                let shift = &a[i] - &a[i - 1];
                let g = &(&Polynomial::term(Rational::one(), d.monomial(i))
                    - &Polynomial::term(Rational::one(), d.monomial(i + 1)))
                    - &Polynomial::constant(shift);
                relations.push(g);
                index_set.push(i);
            }
        }
        Coefficients::Type2(_) => {
            for i in 0..d.r.saturating_sub(1) {
                let c = type2_triple(d, i);
                let g = Polynomial::from_terms(
                    c.into_iter()
                        .enumerate()
                        .map(|(k, ck)| (d.monomial(i + k), ck)),
                );
                relations.push(g);
                index_set.push(i);
            }
        }
    }
    Ok(RelationSet {
        relations,
        index_set,
    })
}

/// The coefficient triples `(c_1, c_2, c_3), (c_4, c_5, c_6), ...` of the
/// Type 2 relation chain, one per relation.
pub fn trinomial_coefficients(d: &TrinomialDatum) -> Result<Vec<[Rational; 3]>, TrinomialError> {
    ensure_valid(d)?;
    if d.variety_type != VarietyType::Type2 {
        return Err(TrinomialError::NotType2);
    }
    Ok((0..d.r.saturating_sub(1))
        .map(|i| type2_triple(d, i))
        .collect())
}

/// `gcd` of each exponent tuple, in tuple order (`q..=r`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EllVector {
    pub first_index: usize,
    pub values: Vec<u32>,
}

pub fn ell(d: &TrinomialDatum) -> EllVector {
    EllVector {
        first_index: d.q(),
        values: d
            .exponents
            .iter()
            .map(|t| t.iter().fold(0u32, |g, &e| g.gcd(&e)))
            .collect(),
    }
}

/// Weights of the one-dimensional torus acting on a Type 2 surface:
/// `T_i -> t^{w_i} T_i` with `w_i = lcm / l_i`, under which every relation
/// picks up the factor `t^lcm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusWeights {
    pub lcm: u64,
    pub weights: Vec<u64>,
}

impl TorusWeights {
    /// The substitution `T_i -> t^{w_i} T_i`.
    pub fn scaling(&self) -> BTreeMap<Var, Polynomial> {
        self.weights
            .iter()
            .enumerate()
            .map(|(i, &w)| {
                let v = Var::t(i as u32, 1);
                let m = Monomial::from_pairs([(v, 1), (Var::Param, w as u32)]);
                (v, Polynomial::term(Rational::one(), m))
            })
            .collect()
    }
}

pub fn is_surface(d: &TrinomialDatum) -> bool {
    d.variety_type == VarietyType::Type2
        && d.m == 0
        && d.r >= 2
        && d.exponents.iter().all(|t| t.len() == 1)
}

fn ensure_surface(d: &TrinomialDatum) -> Result<(), TrinomialError> {
    ensure_valid(d)?;
    if is_surface(d) {
        Ok(())
    } else {
        Err(TrinomialError::NotSurface)
    }
}

pub fn torus_weights(d: &TrinomialDatum) -> Result<TorusWeights, TrinomialError> {
    ensure_surface(d)?;
    let ls: Vec<u64> = d.exponents.iter().map(|t| u64::from(t[0])).collect();
    let lcm = ls.iter().fold(1u64, |acc, l| acc.lcm(l));
    Ok(TorusWeights {
        lcm,
        weights: ls.iter().map(|l| lcm / l).collect(),
    })
}

/// Whether every relation is scaled by exactly `t^lcm` under the torus
/// substitution.
pub fn torus_semi_invariant(d: &TrinomialDatum) -> Result<bool, TrinomialError> {
    let w = torus_weights(d)?;
    let rels = relations(d)?;
    let scaling = w.scaling();
    let factor = Monomial::power(Var::Param, w.lcm as u32);
    Ok(rels
        .relations
        .iter()
        .all(|g| g.substitute(&scaling) == g.mul_monomial(&factor)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elimination {
    Reduced(TrinomialDatum),
    /// The relations are graphs over the remaining variables.
    FullAffineSpace,
}

/// Eliminates the linear variable `T_i` (requires `l_i = 1`) from a Type 2
/// surface by dropping tuple `i` and column `i`.
pub fn eliminate_linear_monomial(
    d: &TrinomialDatum,
    i: usize,
) -> Result<Elimination, TrinomialError> {
    ensure_surface(d)?;
    if i > d.r {
        return Err(TrinomialError::IndexOutOfRange(i));
    }
    let e = d.exponents[i][0];
    if e != 1 {
        return Err(TrinomialError::ExponentNotOne {
            index: i,
            exponent: e,
        });
    }
    if d.r - 1 < 2 {
        return Ok(Elimination::FullAffineSpace);
    }
    let reduced = d.drop_tuple(i);
    ensure_valid(&reduced)?;
    Ok(Elimination::Reduced(reduced))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{buchberger, rat, MonomialOrder, OrderScheme};
    use num_traits::Zero;

    fn pb(l: [u32; 3]) -> TrinomialDatum {
        TrinomialDatum::type2(
            0,
            l.iter().map(|&e| vec![e]).collect(),
            [vec![rat(1), rat(0), rat(1)], vec![rat(0), rat(1), rat(1)]],
        )
    }

    fn tp(i: u32, e: u32) -> Polynomial {
        Polynomial::var(Var::t(i, 1)).pow(e)
    }

    #[test]
    fn type1_relation_matches_definition() {
        let d = TrinomialDatum::type1(0, vec![vec![2], vec![3]], vec![rat(0), rat(1)]);
        let rels = relations(&d).unwrap();
        assert_eq!(rels.index_set, vec![1]);
        // T1^2 - T2^3 - (1 - 0)
        let expected = &(&tp(1, 2) - &tp(2, 3)) - &Polynomial::one();
        assert_eq!(rels.relations, vec![expected]);
    }

    #[test]
    fn type2_relation_by_hand_determinant() {
        let rels = relations(&pb([2, 2, 5])).unwrap();
        let expected = &(&tp(2, 5) - &tp(0, 2)) - &tp(1, 2);
        assert_eq!(rels.relations, vec![expected]);
        assert_eq!(rels.index_set, vec![0]);
    }

    #[test]
    fn coefficient_triples() {
        let c = trinomial_coefficients(&pb([2, 2, 5])).unwrap();
        assert_eq!(c, vec![[rat(-1), rat(-1), rat(1)]]);
        let d = TrinomialDatum::type2_generic(0, vec![vec![2]; 4]);
        let c = trinomial_coefficients(&d).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.iter().flatten().all(|x| !x.is_zero()));
        let t1 = TrinomialDatum::type1_generic(0, vec![vec![2]; 3]);
        assert_eq!(trinomial_coefficients(&t1), Err(TrinomialError::NotType2));
    }

    #[test]
    fn ell_values() {
        let d = TrinomialDatum::type2_generic(0, vec![vec![2, 4, 6], vec![1, 7], vec![5]]);
        assert_eq!(ell(&d).values, vec![2, 1, 5]);
        assert_eq!(ell(&pb([2, 2, 5])).values, vec![2, 2, 5]);
        let t1 = TrinomialDatum::type1_generic(0, vec![vec![4, 6], vec![3]]);
        assert_eq!(
            ell(&t1),
            EllVector {
                first_index: 1,
                values: vec![2, 3]
            }
        );
    }

    #[test]
    fn torus_weights_lcm() {
        assert_eq!(
            torus_weights(&pb([2, 2, 5])).unwrap(),
            TorusWeights {
                lcm: 10,
                weights: vec![5, 5, 2]
            }
        );
        assert_eq!(
            torus_weights(&pb([2, 2, 2])).unwrap().weights,
            vec![1, 1, 1]
        );
        let line = TrinomialDatum::type2_generic(0, vec![vec![2], vec![3]]);
        assert_eq!(torus_weights(&line), Err(TrinomialError::NotSurface));
        let wide = TrinomialDatum::type2_generic(0, vec![vec![2, 1], vec![3], vec![2]]);
        assert_eq!(torus_weights(&wide), Err(TrinomialError::NotSurface));
        assert!(torus_semi_invariant(&pb([2, 3, 7])).unwrap());
    }

    #[test]
    fn relations_lie_in_their_own_basis() {
        let d = TrinomialDatum::type2_generic(0, vec![vec![2, 1], vec![3], vec![2, 2], vec![5]]);
        let rels = relations(&d).unwrap();
        let gb = buchberger(&rels.relations, &MonomialOrder::grevlex()).unwrap();
        assert!(gb.contains_all(&rels.relations));
        assert!(rels.relations.iter().all(|g| g.len() == 3));
    }

    #[test]
    fn rows_of_the_matrix_solve_each_relation() {
        let d = TrinomialDatum::type2(
            0,
            vec![vec![2], vec![3, 1], vec![1], vec![4]],
            [
                vec![rat(2), rat(-1), rat(3), rat(5)],
                vec![rat(1), rat(4), rat(-2), rat(7)],
            ],
        );
        let rels = relations(&d).unwrap();
        for row in 0..2 {
            for (pos, g) in rels.relations.iter().enumerate() {
                let i = rels.index_set[pos];
                // replace each monomial by the matching row entry
                let mut acc = Rational::zero();
                for (m, c) in g.terms() {
                    let k = (i..i + 3).find(|&k| d.monomial(k) == *m).unwrap();
                    let entry = if row == 0 {
                        d.column(k).0
                    } else {
                        d.column(k).1
                    };
                    acc += c * entry;
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn elimination_cases() {
        let d = pb([1, 2, 3]);
        assert_eq!(
            eliminate_linear_monomial(&d, 0),
            Ok(Elimination::FullAffineSpace)
        );
        assert_eq!(
            eliminate_linear_monomial(&d, 1),
            Err(TrinomialError::ExponentNotOne {
                index: 1,
                exponent: 2
            })
        );
        let d = TrinomialDatum::type2_generic(0, vec![vec![1], vec![2], vec![3], vec![4]]);
        match eliminate_linear_monomial(&d, 0).unwrap() {
            Elimination::Reduced(e) => {
                assert_eq!(e.r, 2);
                assert_eq!(e.exponents, vec![vec![2], vec![3], vec![4]]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    /// Lex elimination of `T_i` from the original ideal must give the ideal
    /// of the reduced datum (after renaming the surviving variables).
    fn elimination_oracle(d: &TrinomialDatum, i: usize) {
        let reduced = match eliminate_linear_monomial(d, i).unwrap() {
            Elimination::Reduced(e) => e,
            Elimination::FullAffineSpace => unreachable!(),
        };
        let target = Var::t(i as u32, 1);
        let order = MonomialOrder {
            scheme: OrderScheme::Lex,
            ranking: vec![target],
        };
        let gb = buchberger(&relations(d).unwrap().relations, &order).unwrap();
        let eliminated: Vec<Polynomial> = gb
            .generators()
            .iter()
            .filter(|g| !g.vars().contains(&target))
            .cloned()
            .collect();
        let rename: BTreeMap<Var, Polynomial> = (0..=reduced.r)
            .map(|k| {
                let old = if k < i { k } else { k + 1 };
                (Var::t(k as u32, 1), Polynomial::var(Var::t(old as u32, 1)))
            })
            .collect();
        let renamed: Vec<Polynomial> = relations(&reduced)
            .unwrap()
            .relations
            .iter()
            .map(|g| g.substitute(&rename))
            .collect();
        let gb_elim = buchberger(&eliminated, &MonomialOrder::grevlex()).unwrap();
        let gb_new = buchberger(&renamed, &MonomialOrder::grevlex()).unwrap();
        assert!(
            gb_elim.contains_all(&renamed),
            "new relations not in elimination ideal"
        );
        assert!(
            gb_new.contains_all(&eliminated),
            "elimination ideal not generated"
        );
    }

    #[test]
    fn elimination_matches_groebner_oracle() {
        let d = TrinomialDatum::type2_generic(0, vec![vec![1], vec![2], vec![3], vec![4]]);
        elimination_oracle(&d, 0);
        let d = TrinomialDatum::type2_generic(0, vec![vec![2], vec![1], vec![3], vec![2]]);
        elimination_oracle(&d, 1);
        let d = TrinomialDatum::type2_generic(0, vec![vec![2], vec![3], vec![2], vec![1], vec![2]]);
        elimination_oracle(&d, 3);
        let d = TrinomialDatum::type2_generic(0, vec![vec![2], vec![3], vec![2], vec![1]]);
        elimination_oracle(&d, 3);
    }
}
