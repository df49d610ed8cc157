//! Exact checks behind the residual cases a) to d).

use num_integer::Integer;
use num_traits::Zero;

use super::LndError;
use crate::classify::Subcase;
use crate::exactalg::{buchberger, Monomial, MonomialOrder, Polynomial, Rational, Var};
use crate::suspend::suspension_split;
use crate::trinomial::{
    is_surface, relations, trinomial_coefficients, validate, TrinomialDatum, VarietyType,
};

/// Squared coefficients of the two factorizations of `f` in case a),
/// where `f = (c4/c6) M_1 + (c5/c6) M_2` and `M_i = T_i^{l_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseAIdentityReport {
    pub beta1_sq: Rational,
    pub beta2_sq: Rational,
    pub gamma0_sq: Rational,
    pub gamma1_sq: Rational,
    /// `(a00 a13 - a03 a10)(a01 a12 - a02 a11) / (c6 c3)`.
    pub gamma1_sq_factored: Rational,
    /// `gamma1_sq * c6 * c3` equals the factored product.
    pub matches: bool,
    pub gamma1_nonzero: bool,
    pub f: Polynomial,
    /// `beta1_sq M_1 - beta2_sq M_2 == f`.
    pub beta_recombines: bool,
    /// `gamma0_sq M_0 - gamma1_sq M_1 == f` modulo `g_0`.
    pub gamma_recombines: bool,
}

impl CaseAIdentityReport {
    pub fn holds(&self) -> bool {
        self.matches && self.gamma1_nonzero && self.beta_recombines && self.gamma_recombines
    }
}

fn wrong_shape(msg: impl Into<String>) -> LndError {
    LndError::WrongShape(msg.into())
}

fn require_surface_r(d: &TrinomialDatum, r: usize) -> Result<(), LndError> {
    let report = validate(d);
    if !report.is_valid() {
        return Err(wrong_shape(format!("invalid datum: {report}")));
    }
    if d.variety_type != VarietyType::Type2 || !is_surface(d) || d.r != r {
        return Err(wrong_shape(format!(
            "expected a Type 2 surface with r = {r}"
        )));
    }
    Ok(())
}

pub fn check_case_a_identity(d: &TrinomialDatum) -> Result<CaseAIdentityReport, LndError> {
    require_surface_r(d, 3)?;
    let c = trinomial_coefficients(d)?;
    let [c1, c2, c3] = c[0].clone();
    let [c4, c5, c6] = c[1].clone();
    let beta1_sq = &c4 / &c6;
    let beta2_sq = -(&c5 / &c6);
    let gamma0_sq = -(&c5 / &c6) * (&c1 / &c3);
    let gamma1_sq = -(&c4 / &c6) + (&c5 / &c6) * (&c2 / &c3);

    let a = |row: usize, col: usize| -> Rational {
        let (a0, a1) = d.column(col);
        if row == 0 {
            a0.clone()
        } else {
            a1.clone()
        }
    };
    let product = (a(0, 0) * a(1, 3) - a(0, 3) * a(1, 0)) * (a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1));
    let matches = &gamma1_sq * &c6 * &c3 == product;
    let gamma1_sq_factored = &product / (&c6 * &c3);

    let m = |i: usize, coeff: &Rational| Polynomial::term(coeff.clone(), d.monomial(i));
    let f = &m(1, &(&c4 / &c6)) + &m(2, &(&c5 / &c6));
    let beta_recombines = &m(1, &beta1_sq) - &m(2, &beta2_sq) == f;
    let g0 = relations(d)?.relations[0].clone();
    let gamma_side = &m(0, &gamma0_sq) - &m(1, &gamma1_sq);
    let basis = buchberger(&[g0], &MonomialOrder::grevlex())?;
    let gamma_recombines = basis.normal_form(&(&gamma_side - &f)).is_zero();

    Ok(CaseAIdentityReport {
        gamma1_nonzero: !gamma1_sq.is_zero(),
        beta1_sq,
        beta2_sq,
        gamma0_sq,
        gamma1_sq,
        gamma1_sq_factored,
        matches,
        f,
        beta_recombines,
        gamma_recombines,
    })
}

/// Outcome of the grading hypotheses for one residual subcase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingReport {
    pub subcase: Subcase,
    /// The datum with its tuples in canonical order.
    pub arranged: TrinomialDatum,
    /// Degrees of `T_0, ..., T_{r-1}`.
    pub degrees: Vec<u64>,
    pub f: Polynomial,
    pub f_degree: u64,
    /// Suspension exponent `n = l_r`.
    pub n: u64,
    pub relations_homogeneous: bool,
    pub f_homogeneous: bool,
    pub coprime: bool,
}

impl GradingReport {
    pub fn holds(&self) -> bool {
        self.relations_homogeneous && self.f_homogeneous && self.coprime
    }
}

/// Canonical exponent order for each subcase, with the grading on the
/// first `r` variables and the expected degree of `f`. In case b the
/// exponent 4 sits before 3 so that the suspension exponent is 3.
fn pattern(subcase: Subcase, sorted: &[u32]) -> Option<(Vec<u32>, Vec<u64>, u64)> {
    match (subcase, sorted) {
        (Subcase::A, [2, 2, 2, n]) if n % 2 == 1 => Some((vec![2, 2, 2, *n], vec![1, 1, 1], 2)),
        (Subcase::B, [2, 2, 3, 4]) => Some((vec![2, 2, 4, 3], vec![2, 2, 1], 4)),
        (Subcase::C, [2, 2, 3, 5]) => Some((vec![2, 2, 3, 5], vec![3, 3, 2], 6)),
        (Subcase::D, [2, 2, 2, 3, 5]) => Some((vec![2, 2, 2, 3, 5], vec![3, 3, 3, 2], 6)),
        _ => None,
    }
}

/// Weighted degrees of the terms of `p`, `T_i` having degree `degrees[i]`.
fn term_degrees(p: &Polynomial, degrees: &[u64]) -> Vec<u64> {
    p.terms()
        .map(|(m, _)| weighted_degree(m, degrees))
        .collect()
}

fn weighted_degree(m: &Monomial, degrees: &[u64]) -> u64 {
    m.iter()
        .map(|(v, e)| match v {
            Var::T { i, .. } => degrees.get(i as usize).copied().unwrap_or(0) * e as u64,
            _ => 0,
        })
        .sum()
}

fn homogeneous_of(p: &Polynomial, degrees: &[u64]) -> Option<u64> {
    let ds = term_degrees(p, degrees);
    let first = *ds.first()?;
    ds.iter().all(|&x| x == first).then_some(first)
}

/// Checks that the stated grading makes the relations of `R~` (all but
/// the last) and `f` homogeneous, and that `deg f` is coprime to the
/// suspension exponent. Tuples are first put into canonical order.
pub fn check_case_gradings(
    d: &TrinomialDatum,
    subcase: Subcase,
) -> Result<GradingReport, LndError> {
    let expected_r = if subcase == Subcase::D { 4 } else { 3 };
    require_surface_r(d, expected_r)?;
    let ls: Vec<u32> = d.exponents.iter().map(|t| t[0]).collect();
    let mut sorted = ls.clone();
    sorted.sort_unstable();
    let (target, degrees, f_degree) = pattern(subcase, &sorted).ok_or_else(|| {
        wrong_shape(format!(
            "exponents {ls:?} do not match subcase {}",
            subcase.label()
        ))
    })?;
    let mut used = vec![false; ls.len()];
    let perm: Vec<usize> = target
        .iter()
        .map(|&want| {
            let k = (0..ls.len())
                .find(|&k| !used[k] && ls[k] == want)
                .expect("same multiset");
            used[k] = true;
            k
        })
        .collect();
    let arranged = d.permute_tuples(&perm);
    let rels = relations(&arranged)?.relations;
    let relations_homogeneous = rels[..rels.len() - 1]
        .iter()
        .all(|g| homogeneous_of(g, &degrees).is_some());
    let split = suspension_split(&arranged).map_err(|e| wrong_shape(e.to_string()))?;
    let f_homogeneous = homogeneous_of(&split.f, &degrees) == Some(f_degree);
    let n = *target.last().expect("nonempty pattern") as u64;
    Ok(GradingReport {
        subcase,
        arranged,
        degrees,
        f: split.f,
        f_degree,
        n,
        relations_homogeneous,
        f_homogeneous,
        coprime: f_degree.gcd(&n) == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, ratio};

    fn surf(l: &[u32], rows: [&[i64]; 2]) -> TrinomialDatum {
        TrinomialDatum::type2(
            0,
            l.iter().map(|&e| vec![e]).collect(),
            [
                rows[0].iter().map(|&x| rat(x)).collect(),
                rows[1].iter().map(|&x| rat(x)).collect(),
            ],
        )
    }

    #[test]
    fn case_a_identity_generic() {
        let d = TrinomialDatum::type2_generic(0, vec![vec![2], vec![2], vec![2], vec![7]]);
        let rep = check_case_a_identity(&d).unwrap();
        assert!(rep.holds());
        // columns (1, i): c = (1, -2, 1), (1, -2, 1); product = (3)(1) = 3
        assert_eq!(rep.gamma1_sq, rat(3));
        assert_eq!(rep.beta1_sq, rat(1));
        assert_eq!(rep.beta2_sq, rat(2));
        assert_eq!(rep.gamma0_sq, rat(2));
        assert_eq!(rep.gamma1_sq_factored, rat(3));
    }

    #[test]
    fn case_a_identity_other_matrix() {
        let d = surf(&[2, 2, 2, 3], [&[3, -1, 2, 5], &[1, 4, -7, 2]]);
        let rep = check_case_a_identity(&d).unwrap();
        assert!(rep.holds());
        assert_ne!(rep.gamma1_sq, ratio(0, 1));
    }

    #[test]
    fn case_a_identity_wrong_shape() {
        let dependent = surf(&[2, 2, 2, 3], [&[1, 2, 2, 5], &[1, 2, -7, 2]]);
        assert!(matches!(
            check_case_a_identity(&dependent),
            Err(LndError::WrongShape(_))
        ));
        let r2 = TrinomialDatum::type2_generic(0, vec![vec![2], vec![2], vec![3]]);
        assert!(matches!(
            check_case_a_identity(&r2),
            Err(LndError::WrongShape(_))
        ));
    }

    #[test]
    fn gradings_hold_for_canonical_patterns() {
        for n in (3..=15).step_by(2) {
            let d = TrinomialDatum::type2_generic(0, vec![vec![2], vec![2], vec![2], vec![n]]);
            let rep = check_case_gradings(&d, Subcase::A).unwrap();
            assert!(rep.holds(), "n = {n}");
            assert_eq!(rep.f_degree, 2);
        }
        let b = TrinomialDatum::type2_generic(0, vec![vec![2], vec![2], vec![4], vec![3]]);
        let rep = check_case_gradings(&b, Subcase::B).unwrap();
        assert!(rep.holds());
        assert_eq!((rep.f_degree, rep.n), (4, 3));
        let c = TrinomialDatum::type2_generic(0, vec![vec![2], vec![2], vec![3], vec![5]]);
        let rep = check_case_gradings(&c, Subcase::C).unwrap();
        assert!(rep.holds());
        assert_eq!((rep.f_degree, rep.n), (6, 5));
        let d = TrinomialDatum::type2_generic(0, vec![vec![2], vec![2], vec![2], vec![3], vec![5]]);
        let rep = check_case_gradings(&d, Subcase::D).unwrap();
        assert!(rep.holds());
        assert_eq!((rep.f_degree, rep.n), (6, 5));
    }

    #[test]
    fn gradings_rearrange_tuples() {
        let b = TrinomialDatum::type2_generic(0, vec![vec![3], vec![2], vec![4], vec![2]]);
        let rep = check_case_gradings(&b, Subcase::B).unwrap();
        assert!(rep.holds());
        let ls: Vec<u32> = rep.arranged.exponents.iter().map(|t| t[0]).collect();
        assert_eq!(ls, vec![2, 2, 4, 3]);
    }

    #[test]
    fn case_b_in_sorted_order_fails_homogeneity() {
        // with l_2 = 3 and l_3 = 4 the stated grading does not fit
        let d = TrinomialDatum::type2_generic(0, vec![vec![2], vec![2], vec![3], vec![4]]);
        let rels = relations(&d).unwrap().relations;
        assert!(homogeneous_of(&rels[0], &[2, 2, 1]).is_none());
    }

    #[test]
    fn gradings_wrong_shape() {
        let d = TrinomialDatum::type2_generic(0, vec![vec![2], vec![2], vec![3], vec![5]]);
        assert!(matches!(
            check_case_gradings(&d, Subcase::B),
            Err(LndError::WrongShape(_))
        ));
        let even = TrinomialDatum::type2_generic(0, vec![vec![2], vec![2], vec![2], vec![4]]);
        assert!(matches!(
            check_case_gradings(&even, Subcase::A),
            Err(LndError::WrongShape(_))
        ));
    }
}
