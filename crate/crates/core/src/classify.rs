//! Rigidity and rationality decisions for trinomial varieties.
//!
//! Rigidity is decided from `m` and the heavy set (tuples without an
//! exponent equal to 1), plus the parity pattern of Type 2 condition 3.
//! Rationality is decided from the pairwise gcds of the tuple gcds.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::trinomial::{ell, is_surface, validate, TrinomialDatum, ValidationReport, VarietyType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("invalid datum: {0}")]
    InvalidDatum(ValidationReport),
    #[error("operation requires a Type 2 surface (m = 0, every tuple of length 1, r >= 2)")]
    NotSurface,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

fn ensure_valid(d: &TrinomialDatum) -> Result<(), ClassifyError> {
    let report = validate(d);
    if report.is_valid() {
        Ok(())
    } else {
        Err(ClassifyError::InvalidDatum(report))
    }
}

/// Tuple indices with no exponent equal to 1, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeavySet {
    pub indices: Vec<usize>,
}

impl HeavySet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }
}

pub fn heavy_set(d: &TrinomialDatum) -> HeavySet {
    HeavySet {
        indices: d.indices().filter(|&i| !d.tuple(i).contains(&1)).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RigidityCondition {
    MPositive,
    T1Cond2,
    T2Cond2,
    T2Cond3,
    None,
}

impl RigidityCondition {
    pub fn label(self) -> &'static str {
        match self {
            RigidityCondition::MPositive => "M_POSITIVE",
            RigidityCondition::T1Cond2 => "T1_COND2",
            RigidityCondition::T2Cond2 => "T2_COND2",
            RigidityCondition::T2Cond3 => "T2_COND3",
            RigidityCondition::None => "NONE",
        }
    }
}

impl fmt::Display for RigidityCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RigidityVerdict {
    pub rigid: bool,
    pub fired_condition: RigidityCondition,
    /// The heavy set for the second conditions, `[a, b, c]` for Type 2
    /// condition 3, empty otherwise.
    pub exceptional_indices: Vec<usize>,
}

impl RigidityVerdict {
    fn non_rigid(fired_condition: RigidityCondition, exceptional_indices: Vec<usize>) -> Self {
        RigidityVerdict {
            rigid: false,
            fired_condition,
            exceptional_indices,
        }
    }
}

/// A tuple containing a 2 with all entries even.
fn even_with_two(t: &[u32]) -> bool {
    t.contains(&2) && t.iter().all(|e| e % 2 == 0)
}

/// First `(a, b, c)` in lexicographic order satisfying Type 2 condition 3.
fn condition_three(d: &TrinomialDatum, heavy: &HeavySet) -> Option<[usize; 3]> {
    let idx: Vec<usize> = d.indices().collect();
    for &a in &idx {
        if !even_with_two(d.tuple(a)) {
            continue;
        }
        for &b in idx.iter().filter(|&&b| b > a) {
            if !even_with_two(d.tuple(b)) {
                continue;
            }
            for &c in idx.iter().filter(|&&c| c != a && c != b) {
                if heavy.indices.iter().all(|&h| h == a || h == b || h == c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

pub fn classify_rigidity(d: &TrinomialDatum) -> Result<RigidityVerdict, ClassifyError> {
    ensure_valid(d)?;
    if d.m > 0 {
        return Ok(RigidityVerdict::non_rigid(
            RigidityCondition::MPositive,
            Vec::new(),
        ));
    }
    let heavy = heavy_set(d);
    match d.variety_type {
        VarietyType::Type1 => {
            if heavy.len() <= 1 {
                return Ok(RigidityVerdict::non_rigid(
                    RigidityCondition::T1Cond2,
                    heavy.indices,
                ));
            }
        }
        VarietyType::Type2 => {
            if heavy.len() <= 2 {
                return Ok(RigidityVerdict::non_rigid(
                    RigidityCondition::T2Cond2,
                    heavy.indices,
                ));
            }
            if let Some(abc) = condition_three(d, &heavy) {
                return Ok(RigidityVerdict::non_rigid(
                    RigidityCondition::T2Cond3,
                    abc.to_vec(),
                ));
            }
        }
    }
    Ok(RigidityVerdict {
        rigid: true,
        fired_condition: RigidityCondition::None,
        exceptional_indices: Vec::new(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RationalityCase {
    AllCoprime,
    OnePair,
    TripleOfTwos,
    None,
}

impl RationalityCase {
    pub fn label(self) -> &'static str {
        match self {
            RationalityCase::AllCoprime => "ALL_COPRIME",
            RationalityCase::OnePair => "ONE_PAIR",
            RationalityCase::TripleOfTwos => "TRIPLE_OF_TWOS",
            RationalityCase::None => "NONE",
        }
    }
}

impl fmt::Display for RationalityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalityVerdict {
    pub rational: bool,
    pub fired_case: RationalityCase,
}

/// Rationality from a gcd vector, pairs taken over distinct positions.
pub fn rationality_of_ell(ell: &[u32]) -> RationalityVerdict {
    let n = ell.len();
    let g = |i: usize, j: usize| ell[i].gcd(&ell[j]);
    let bad: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| g(i, j) > 1)
        .collect();
    let case = if bad.is_empty() {
        RationalityCase::AllCoprime
    } else if bad.len() == 1 {
        RationalityCase::OnePair
    } else if bad.len() == 3 && {
        let mut idx: Vec<usize> = bad.iter().flat_map(|&(i, j)| [i, j]).collect();
        idx.sort_unstable();
        idx.dedup();
        idx.len() == 3 && bad.iter().all(|&(i, j)| g(i, j) == 2)
    } {
        RationalityCase::TripleOfTwos
    } else {
        RationalityCase::None
    };
    RationalityVerdict {
        rational: case != RationalityCase::None,
        fired_case: case,
    }
}

/// The gcd vector used by the rationality test. Type 1 data carry the
/// empty tuple `l_0 = ()` of the constant term, whose gcd is 0.
pub fn rationality_ell(d: &TrinomialDatum) -> Vec<u32> {
    let mut v = Vec::with_capacity(d.exponents.len() + 1);
    if d.variety_type == VarietyType::Type1 {
        v.push(0);
    }
    v.extend(ell(d).values);
    v
}

pub fn classify_rationality(d: &TrinomialDatum) -> Result<RationalityVerdict, ClassifyError> {
    ensure_valid(d)?;
    Ok(rationality_of_ell(&rationality_ell(d)))
}

fn surface_exponents(d: &TrinomialDatum) -> Result<Vec<u64>, ClassifyError> {
    ensure_valid(d)?;
    if !is_surface(d) {
        return Err(ClassifyError::NotSurface);
    }
    Ok(d.exponents.iter().map(|t| u64::from(t[0])).collect())
}

/// Whether some three distinct exponents have reciprocal sum at most 1,
/// compared exactly as `ab + ac + bc <= abc`.
pub fn abc_kernel_predicate(d: &TrinomialDatum) -> Result<bool, ClassifyError> {
    let ls = surface_exponents(d)?;
    if ls.contains(&1) {
        return Err(ClassifyError::PreconditionViolated(
            "all exponents must be at least 2".into(),
        ));
    }
    let n = ls.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (ls[i], ls[j], ls[k]);
                if a * b + a * c + b * c <= a * b * c {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    GameOverAbc,
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
    NotSurface,
    Reducible,
}

impl CaseLabel {
    pub fn label(self) -> &'static str {
        match self {
            CaseLabel::GameOverAbc => "GAME_OVER_ABC",
            CaseLabel::Case1 => "CASE1",
            CaseLabel::Case2 => "CASE2",
            CaseLabel::Case3 => "CASE3",
            CaseLabel::Case4 => "CASE4",
            CaseLabel::Case5 => "CASE5",
            CaseLabel::NotSurface => "NOT_SURFACE",
            CaseLabel::Reducible => "REDUCIBLE",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subcase {
    A,
    B,
    C,
    D,
}

impl Subcase {
    pub fn label(self) -> &'static str {
        match self {
            Subcase::A => "a",
            Subcase::B => "b",
            Subcase::C => "c",
            Subcase::D => "d",
        }
    }

    pub fn parse(s: &str) -> Option<Subcase> {
        match s {
            "a" => Some(Subcase::A),
            "b" => Some(Subcase::B),
            "c" => Some(Subcase::C),
            "d" => Some(Subcase::D),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CaseTag {
    pub tag: CaseLabel,
    pub subcase: Option<Subcase>,
}

impl CaseTag {
    fn plain(tag: CaseLabel) -> Self {
        CaseTag { tag, subcase: None }
    }
}

/// Residual subcase of a sorted exponent vector, before rationality
/// screening.
fn subcase_pattern(sorted: &[u64]) -> Option<Subcase> {
    match sorted {
        [2, 2, 2, n] if n % 2 == 1 => Some(Subcase::A),
        [2, 2, 3, 4] => Some(Subcase::B),
        [2, 2, 3, 5] => Some(Subcase::C),
        [2, 2, 2, 3, 5] => Some(Subcase::D),
        _ => None,
    }
}

/// Case of a surface that passed the ABC screen and fails rigidity
/// conditions 2 and 3. Rational data matching one of the residual
/// patterns also get a subcase.
pub fn residual_case_tag(d: &TrinomialDatum) -> Result<CaseTag, ClassifyError> {
    let ls = surface_exponents(d)?;
    if ls.contains(&1) {
        return Err(ClassifyError::PreconditionViolated(
            "all exponents must be at least 2".into(),
        ));
    }
    if abc_kernel_predicate(d)? {
        return Err(ClassifyError::PreconditionViolated(
            "ABC predicate holds; the surface is rigid without case analysis".into(),
        ));
    }
    if !classify_rigidity(d)?.rigid {
        return Err(ClassifyError::PreconditionViolated(
            "rigidity condition 2 or 3 holds".into(),
        ));
    }
    let mut sorted = ls.clone();
    sorted.sort_unstable();
    let above_two: Vec<u64> = sorted.iter().copied().filter(|&l| l > 2).collect();
    let tag = match above_two.as_slice() {
        [] => CaseLabel::Case1,
        [_] => CaseLabel::Case2,
        [3, 3] => CaseLabel::Case3,
        [3, 4] => CaseLabel::Case4,
        [3, 5] => CaseLabel::Case5,
        _ => {
            return Err(ClassifyError::PreconditionViolated(format!(
                "exponents {sorted:?} fit none of the five cases"
            )))
        }
    };
    let subcase = if classify_rationality(d)?.rational {
        subcase_pattern(&sorted)
    } else {
        None
    };
    Ok(CaseTag { tag, subcase })
}

/// Case tag for reports. `None` when the datum is a non-rigid surface,
/// where no case analysis applies.
pub fn case_tag(d: &TrinomialDatum) -> Result<Option<CaseTag>, ClassifyError> {
    ensure_valid(d)?;
    if !is_surface(d) {
        return Ok(Some(CaseTag::plain(CaseLabel::NotSurface)));
    }
    if d.exponents.iter().any(|t| t[0] == 1) {
        return Ok(Some(CaseTag::plain(CaseLabel::Reducible)));
    }
    if abc_kernel_predicate(d)? {
        return Ok(Some(CaseTag::plain(CaseLabel::GameOverAbc)));
    }
    if !classify_rigidity(d)?.rigid {
        return Ok(None);
    }
    residual_case_tag(d).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t2(l: &[&[u32]]) -> TrinomialDatum {
        TrinomialDatum::type2_generic(0, l.iter().map(|t| t.to_vec()).collect())
    }

    fn surf(l: &[u32]) -> TrinomialDatum {
        TrinomialDatum::type2_generic(0, l.iter().map(|&e| vec![e]).collect())
    }

    #[test]
    fn heavy_sets() {
        assert_eq!(
            heavy_set(&t2(&[&[1, 3], &[2], &[2, 2]])).indices,
            vec![1, 2]
        );
        assert!(heavy_set(&t2(&[&[1], &[1, 4], &[3, 1]])).is_empty());
        assert_eq!(heavy_set(&surf(&[2, 2, 5])).indices, vec![0, 1, 2]);
    }

    #[test]
    fn pham_brieskorn_examples() {
        for m in 2..9 {
            let v = classify_rigidity(&surf(&[2, 2, m])).unwrap();
            assert!(!v.rigid);
            assert_eq!(v.fired_condition, RigidityCondition::T2Cond3);
            assert_eq!(v.exceptional_indices, vec![0, 1, 2]);
        }
        assert!(classify_rigidity(&surf(&[2, 3, 5])).unwrap().rigid);
        assert!(classify_rigidity(&surf(&[4, 2, 3])).unwrap().rigid);
    }

    #[test]
    fn m_positive_fires_first() {
        let d = TrinomialDatum::type2_generic(1, vec![vec![2], vec![3], vec![5]]);
        let v = classify_rigidity(&d).unwrap();
        assert_eq!(
            (v.rigid, v.fired_condition),
            (false, RigidityCondition::MPositive)
        );
    }

    #[test]
    fn type1_condition_two() {
        let d = TrinomialDatum::type1_generic(0, vec![vec![2, 2], vec![1, 5], vec![3, 1]]);
        let v = classify_rigidity(&d).unwrap();
        assert_eq!(v.fired_condition, RigidityCondition::T1Cond2);
        assert_eq!(v.exceptional_indices, vec![1]);
        let d = TrinomialDatum::type1_generic(0, vec![vec![2], vec![2], vec![3, 1]]);
        assert!(classify_rigidity(&d).unwrap().rigid);
    }

    #[test]
    fn type2_condition_three_with_wide_tuples() {
        let v = classify_rigidity(&t2(&[&[2, 4], &[2], &[3], &[1, 7]])).unwrap();
        assert_eq!(v.fired_condition, RigidityCondition::T2Cond3);
        assert_eq!(v.exceptional_indices, vec![0, 1, 2]);
        // tuple 0 is even but has no 2
        assert!(
            classify_rigidity(&t2(&[&[4, 6], &[2], &[3], &[1, 7]]))
                .unwrap()
                .rigid
        );
        let v = classify_rigidity(&t2(&[&[3], &[1, 2], &[1, 1], &[5]])).unwrap();
        assert_eq!(v.fired_condition, RigidityCondition::T2Cond2);
    }

    #[test]
    fn rationality_cases() {
        let r = |l: &[u32]| rationality_of_ell(l).fired_case;
        assert_eq!(r(&[2, 3, 5]), RationalityCase::AllCoprime);
        assert_eq!(r(&[2, 2, 2]), RationalityCase::TripleOfTwos);
        assert_eq!(r(&[2, 2, 2, 2]), RationalityCase::None);
        assert_eq!(r(&[4, 6, 5]), RationalityCase::OnePair);
        assert_eq!(r(&[4, 4, 4]), RationalityCase::None);
        assert_eq!(r(&[2, 4, 6, 3]), RationalityCase::None);
    }

    #[test]
    fn type1_rationality_uses_the_constant_term() {
        // x^3 - y^3 = 1 is a smooth cubic curve, x^2 - y^2 = 1 a conic
        let cubic = TrinomialDatum::type1_generic(0, vec![vec![3], vec![3]]);
        assert!(!classify_rationality(&cubic).unwrap().rational);
        let conic = TrinomialDatum::type1_generic(0, vec![vec![2], vec![2]]);
        assert_eq!(
            classify_rationality(&conic).unwrap().fired_case,
            RationalityCase::TripleOfTwos
        );
    }

    #[test]
    fn abc_predicate() {
        assert!(abc_kernel_predicate(&surf(&[2, 3, 7])).unwrap());
        assert!(!abc_kernel_predicate(&surf(&[2, 3, 5])).unwrap());
        for k in 2..20 {
            assert!(!abc_kernel_predicate(&surf(&[2, 2, k])).unwrap());
        }
        assert!(abc_kernel_predicate(&surf(&[2, 2, 3, 3, 3])).unwrap());
        assert_eq!(
            abc_kernel_predicate(&t2(&[&[2, 1], &[3], &[5]])),
            Err(ClassifyError::NotSurface)
        );
        assert!(matches!(
            abc_kernel_predicate(&surf(&[1, 3, 7])),
            Err(ClassifyError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn residual_cases() {
        let tag = |l: &[u32]| residual_case_tag(&surf(l)).unwrap();
        assert_eq!(
            tag(&[2, 2, 2, 7]),
            CaseTag {
                tag: CaseLabel::Case2,
                subcase: Some(Subcase::A)
            }
        );
        assert_eq!(
            tag(&[2, 2, 3, 4]),
            CaseTag {
                tag: CaseLabel::Case4,
                subcase: Some(Subcase::B)
            }
        );
        assert_eq!(
            tag(&[2, 4, 2, 3]),
            CaseTag {
                tag: CaseLabel::Case4,
                subcase: Some(Subcase::B)
            }
        );
        assert_eq!(
            tag(&[2, 2, 3, 5]),
            CaseTag {
                tag: CaseLabel::Case5,
                subcase: Some(Subcase::C)
            }
        );
        assert_eq!(
            tag(&[2, 2, 2, 3, 5]),
            CaseTag {
                tag: CaseLabel::Case5,
                subcase: Some(Subcase::D)
            }
        );
        // non-rational residual data carry no subcase
        assert_eq!(
            tag(&[2, 2, 2, 2]),
            CaseTag {
                tag: CaseLabel::Case1,
                subcase: None
            }
        );
        assert_eq!(
            tag(&[2, 2, 2, 8]),
            CaseTag {
                tag: CaseLabel::Case2,
                subcase: None
            }
        );
        assert_eq!(
            tag(&[2, 2, 3, 3]),
            CaseTag {
                tag: CaseLabel::Case3,
                subcase: None
            }
        );
        assert_eq!(
            tag(&[2, 3, 3]),
            CaseTag {
                tag: CaseLabel::Case3,
                subcase: None
            }
        );
        assert!(residual_case_tag(&surf(&[2, 2, 5])).is_err());
        assert!(residual_case_tag(&surf(&[2, 3, 7])).is_err());
    }

    #[test]
    fn report_case_tags() {
        assert_eq!(
            case_tag(&surf(&[2, 3, 7])).unwrap().unwrap().tag,
            CaseLabel::GameOverAbc
        );
        assert_eq!(
            case_tag(&surf(&[1, 3, 7])).unwrap().unwrap().tag,
            CaseLabel::Reducible
        );
        assert_eq!(
            case_tag(&t2(&[&[2, 2], &[3], &[5]])).unwrap().unwrap().tag,
            CaseLabel::NotSurface
        );
        assert_eq!(case_tag(&surf(&[2, 2, 5])).unwrap(), None);
    }
}
