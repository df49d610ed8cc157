//! Suspensions `y_1^{k_1} ... y_m^{k_m} = f(x)` over a base, and the split
//! of a Type 2 datum as a suspension over the datum with its last tuple
//! removed.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::{Monomial, Polynomial, Rational, Var};
use crate::trinomial::{minor, relations, validate, TrinomialDatum, ValidationReport, VarietyType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuspendError {
    #[error("invalid datum: {0}")]
    InvalidDatum(ValidationReport),
    #[error("suspension split is defined for Type 2 data only")]
    NotType2,
    #[error("suspension split needs r >= 2")]
    TooFewTuples,
    #[error("suspension function f is constant")]
    ConstantF,
    #[error("suspension weights must be positive, one per new variable")]
    BadWeights,
    #[error("f mentions the suspension variable {0}")]
    FUsesNewVariable(Var),
}

/// `Susp(X, f, k_1, ..., k_m)` given by the relations of `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuspensionSpec {
    pub base_relations: Vec<Polynomial>,
    pub f: Polynomial,
    pub weights: Vec<u32>,
    pub new_vars: Vec<Var>,
}

impl SuspensionSpec {
    pub fn new(
        base_relations: Vec<Polynomial>,
        f: Polynomial,
        weights: Vec<u32>,
        new_vars: Vec<Var>,
    ) -> Result<SuspensionSpec, SuspendError> {
        if f.is_constant() {
            return Err(SuspendError::ConstantF);
        }
        if weights.is_empty() || weights.len() != new_vars.len() || weights.contains(&0) {
            return Err(SuspendError::BadWeights);
        }
        let mut used = f.vars();
        used.extend(base_relations.iter().flat_map(|g| g.vars()));
        if let Some(&v) = new_vars.iter().find(|v| used.contains(v)) {
            return Err(SuspendError::FUsesNewVariable(v));
        }
        Ok(SuspensionSpec {
            base_relations,
            f,
            weights,
            new_vars,
        })
    }

    /// `y_1^{k_1} ... y_m^{k_m} - f`.
    pub fn suspension_relation(&self) -> Polynomial {
        let y = Monomial::from_pairs(
            self.new_vars
                .iter()
                .copied()
                .zip(self.weights.iter().copied()),
        );
        &Polynomial::term(Rational::one(), y) - &self.f
    }
}

/// Base relations followed by the suspension relation.
pub fn build_suspension(spec: &SuspensionSpec) -> Vec<Polynomial> {
    let mut out = spec.base_relations.clone();
    out.push(spec.suspension_relation());
    out
}

/// One step of the Type 2 induction: `X = Susp(Z, f, l_r)` with
/// `f = p1 T_{r-2}^{l_{r-2}} + p2 T_{r-1}^{l_{r-1}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    /// `Z`: the datum without tuple `r` and column `r`.
    pub base: TrinomialDatum,
    pub f: Polynomial,
    pub p1: Rational,
    pub p2: Rational,
    pub suspension_weights: Vec<u32>,
    pub suspension_vars: Vec<Var>,
    /// `g_{r-2} = scale * (T_r^{l_r} - f)`; the `T_r^{l_r}` coefficient of
    /// `g_{r-2}`.
    pub scale: Rational,
    /// Whether `g_{r-2}` was recovered exactly as `scale * (T_r^{l_r} - f)`.
    pub reconstructed: bool,
}

impl SplitResult {
    pub fn suspension_spec(&self) -> Result<SuspensionSpec, SuspendError> {
        let base_relations = relations(&self.base)
            .map_err(|_| SuspendError::InvalidDatum(validate(&self.base)))?
            .relations;
        SuspensionSpec::new(
            base_relations,
            self.f.clone(),
            self.suspension_weights.clone(),
            self.suspension_vars.clone(),
        )
    }
}

pub fn suspension_split(d: &TrinomialDatum) -> Result<SplitResult, SuspendError> {
    let report = validate(d);
    if !report.is_valid() {
        return Err(SuspendError::InvalidDatum(report));
    }
    if d.variety_type != VarietyType::Type2 {
        return Err(SuspendError::NotType2);
    }
    if d.r < 2 {
        return Err(SuspendError::TooFewTuples);
    }
    let r = d.r;
    let denom = minor(d, r - 2, r - 1);
    debug_assert!(!denom.is_zero());
    let p1 = -minor(d, r - 1, r) / &denom;
    let p2 = minor(d, r - 2, r) / &denom;
    let f = &Polynomial::term(p1.clone(), d.monomial(r - 2))
        + &Polynomial::term(p2.clone(), d.monomial(r - 1));
    let rels = relations(d).map_err(|_| SuspendError::InvalidDatum(validate(d)))?;
    let g = rels.get(r - 2).expect("relation g_{r-2} exists for r >= 2");
    let lifted = &Polynomial::term(Rational::one(), d.monomial(r)) - &f;
    let reconstructed = g.scalar_multiple_of(&lifted) == Some(denom.clone());
    Ok(SplitResult {
        base: d.drop_tuple(r),
        f,
        p1,
        p2,
        suspension_weights: d.tuple(r).to_vec(),
        suspension_vars: (1..=d.tuple(r).len() as u32)
            .map(|j| Var::t(r as u32, j))
            .collect(),
        scale: denom,
        reconstructed,
    })
}

/// Splits repeatedly down to the `r = 2` datum; the chain has `r - 1`
/// stages and the last base is the affine space of the first two tuples.
pub fn split_chain(d: &TrinomialDatum) -> Result<Vec<SplitResult>, SuspendError> {
    let mut out = Vec::new();
    let mut cur = d.clone();
    loop {
        let s = suspension_split(&cur)?;
        let next = s.base.clone();
        out.push(s);
        if next.r < 2 {
            break;
        }
        cur = next;
    }
    Ok(out)
}
