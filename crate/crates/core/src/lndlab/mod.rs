//! Locally nilpotent derivation witnesses and their verification.
//!
//! A derivation of the quotient ring is given by an ambient lift: images
//! of the generators in the polynomial ring. It is well defined when it
//! maps every relation into the ideal, and locally nilpotent once every
//! generator's iterated image (reduced modulo the ideal) reaches zero.
//! Non-nilpotency is never asserted, only the failure to prove nilpotency
//! within a bound.

mod cases;

pub use cases::{check_case_a_identity, check_case_gradings, CaseAIdentityReport, GradingReport};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactalg::{
    apply_derivation, buchberger, DerivationImages, ExactAlgError, GroebnerBasis, Monomial,
    MonomialOrder, Polynomial, Rational, Var,
};
use crate::suspend::{suspension_split, SuspensionSpec};
use crate::trinomial::{relations, TrinomialDatum, TrinomialError, VarietyType};

pub const DEFAULT_BOUND: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LndError {
    #[error(transparent)]
    Trinomial(#[from] TrinomialError),
    #[error(transparent)]
    Algebra(#[from] ExactAlgError),
    #[error("datum has no S variables")]
    NoSVariables,
    #[error("datum is not a hypersurface (needs exactly one relation)")]
    NotHypersurface,
    #[error("{var} has exponent {exponent}, expected 1")]
    ExponentNotOne { var: Var, exponent: u32 },
    #[error("{0} is not a variable of the datum")]
    UnknownVariable(Var),
    #[error("{0} and {1} belong to the same monomial")]
    SameTuple(Var, Var),
    #[error("base derivation does not preserve the base ideal")]
    BaseNotWellDefined,
    #[error("derivation does not annihilate f modulo the base ideal")]
    FNotInKernel,
    #[error("wrong shape: {0}")]
    WrongShape(String),
}

/// Ambient lift of a derivation; unmapped variables go to zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Derivation {
    pub images: DerivationImages,
}

impl Derivation {
    pub fn new(images: DerivationImages) -> Derivation {
        let images = images.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        Derivation { images }
    }

    /// `d/dv`.
    pub fn coordinate(v: Var) -> Derivation {
        Derivation::new(BTreeMap::from([(v, Polynomial::one())]))
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        apply_derivation(&self.images, p)
    }

    pub fn is_zero(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, v: Var) -> Polynomial {
        self.images.get(&v).cloned().unwrap_or_default()
    }
}

/// Generators, relations and a Gröbner basis of the relation ideal.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub variables: Vec<Var>,
    pub relations: Vec<Polynomial>,
    pub basis: GroebnerBasis,
}

impl QuotientRing {
    pub fn of_datum(d: &TrinomialDatum) -> Result<QuotientRing, LndError> {
        let rels = relations(d)?;
        QuotientRing::from_relations(d.variables(), rels.relations)
    }

    pub fn from_relations(
        variables: Vec<Var>,
        relations: Vec<Polynomial>,
    ) -> Result<QuotientRing, LndError> {
        let basis = buchberger(&relations, &MonomialOrder::grevlex())?;
        Ok(QuotientRing {
            variables,
            relations,
            basis,
        })
    }

    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        self.basis.normal_form(p)
    }
}

/// Normal forms of `D(g_i)`; all zero iff `D` descends to the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellDefinedCertificate {
    pub well_defined: bool,
    pub reductions: Vec<Polynomial>,
}

pub fn verify_well_defined(der: &Derivation, ring: &QuotientRing) -> WellDefinedCertificate {
    let reductions: Vec<Polynomial> = ring
        .relations
        .iter()
        .map(|g| ring.reduce(&der.apply(g)))
        .collect();
    WellDefinedCertificate {
        well_defined: reductions.iter().all(Polynomial::is_zero),
        reductions,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NilpotencyVerdict {
    Proven,
    Inconclusive,
}

/// `depths[v]` is the last index `n` with `D^n(v) != 0` modulo the ideal,
/// recorded for every generator whose chain vanished within the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyCertificate {
    pub depths: BTreeMap<Var, usize>,
    pub verdict: NilpotencyVerdict,
}

impl NilpotencyCertificate {
    pub fn max_depth(&self) -> usize {
        self.depths.values().copied().max().unwrap_or(0)
    }
}

/// `v, D(v), D^2(v), ...` reduced modulo the ideal, stopping before the
/// first zero; `None` if `bound` applications do not reach zero.
fn reduced_chain(
    der: &Derivation,
    ring: &QuotientRing,
    p: &Polynomial,
    bound: usize,
) -> Option<Vec<Polynomial>> {
    let mut chain = Vec::new();
    let mut cur = ring.reduce(p);
    while !cur.is_zero() {
        if chain.len() >= bound {
            return None;
        }
        let next = ring.reduce(&der.apply(&cur));
        chain.push(cur);
        cur = next;
    }
    Some(chain)
}

pub fn verify_locally_nilpotent(
    der: &Derivation,
    ring: &QuotientRing,
    bound: usize,
) -> NilpotencyCertificate {
    let mut depths = BTreeMap::new();
    let mut verdict = NilpotencyVerdict::Proven;
    for &v in &ring.variables {
        match reduced_chain(der, ring, &Polynomial::var(v), bound) {
            Some(chain) => {
                depths.insert(v, chain.len().saturating_sub(1));
            }
            None => verdict = NilpotencyVerdict::Inconclusive,
        }
    }
    NilpotencyCertificate { depths, verdict }
}

/// `exp(tD)(v)` for each generator, computed modulo the ideal.
pub fn generator_flows(
    der: &Derivation,
    ring: &QuotientRing,
    bound: usize,
) -> Result<BTreeMap<Var, Polynomial>, LndError> {
    let mut flows = BTreeMap::new();
    for &v in &ring.variables {
        let chain = reduced_chain(der, ring, &Polynomial::var(v), bound)
            .ok_or(ExactAlgError::NotNilpotentWithinBound { bound })?;
        let mut flow = Polynomial::zero();
        let mut factorial = BigInt::from(1);
        for (k, q) in chain.iter().enumerate() {
            if k > 0 {
                factorial *= k;
            }
            let coeff = Rational::new(1.into(), factorial.clone());
            flow = &flow
                + &q.scale(&coeff)
                    .mul_monomial(&Monomial::power(Var::Param, k as u32));
        }
        flows.insert(v, flow);
    }
    Ok(flows)
}

/// Whether `exp(tD)` maps every relation into the ideal extended by the
/// parameter `t`. Since `exp(tD)` is a ring homomorphism, `exp(tD)(g)` is
/// `g` evaluated at the generator flows.
pub fn exp_preserves_ideal(
    der: &Derivation,
    ring: &QuotientRing,
    bound: usize,
) -> Result<bool, LndError> {
    let flows = generator_flows(der, ring, bound)?;
    Ok(ring
        .relations
        .iter()
        .all(|g| ring.reduce(&g.substitute(&flows)).is_zero()))
}

/// `d/dS_1`.
pub fn witness_s_variable(d: &TrinomialDatum) -> Result<Derivation, LndError> {
    if d.m == 0 {
        return Err(LndError::NoSVariables);
    }
    Ok(Derivation::coordinate(Var::S(1)))
}

/// The Jacobian derivation of a hypersurface `g`:
/// `u -> dg/dv`, `v -> -dg/du`, where `u` has exponent 1 and `v` lies in
/// another monomial.
pub fn witness_jacobian(
    d: &TrinomialDatum,
    linear: Var,
    partner: Var,
) -> Result<Derivation, LndError> {
    let rels = relations(d)?;
    if rels.relations.len() != 1 {
        return Err(LndError::NotHypersurface);
    }
    let (ti, _) = d
        .tuple_of(linear)
        .ok_or(LndError::UnknownVariable(linear))?;
    let (tp, _) = d
        .tuple_of(partner)
        .ok_or(LndError::UnknownVariable(partner))?;
    let e = d.exponent_of(linear).expect("checked above");
    if e != 1 {
        return Err(LndError::ExponentNotOne {
            var: linear,
            exponent: e,
        });
    }
    if ti == tp {
        return Err(LndError::SameTuple(linear, partner));
    }
    let g = &rels.relations[0];
    Ok(Derivation::new(BTreeMap::from([
        (linear, g.partial(partner)),
        (partner, -&g.partial(linear)),
    ])))
}

/// A linear variable and a partner of smallest exponent in another tuple,
/// for hypersurface data. Ties resolve to the first in variable order.
pub fn jacobian_pair(d: &TrinomialDatum) -> Option<(Var, Var)> {
    let vars = d.t_vars();
    let linear = *vars.iter().find(|&&v| d.exponent_of(v) == Some(1))?;
    let (ti, _) = d.tuple_of(linear)?;
    let partner = vars
        .iter()
        .filter(|&&v| d.tuple_of(v).map(|(i, _)| i) != Some(ti))
        .min_by_key(|&&v| d.exponent_of(v))?;
    Some((linear, *partner))
}

/// Extends a base derivation by `y_i -> 0` to the suspension, provided it
/// preserves the base ideal and annihilates `f` modulo it.
pub fn witness_suspension_lift(
    base: &Derivation,
    spec: &SuspensionSpec,
) -> Result<Derivation, LndError> {
    let mut vars: Vec<Var> = spec
        .base_relations
        .iter()
        .flat_map(|g| g.vars())
        .chain(spec.f.vars())
        .chain(base.images.keys().copied())
        .collect();
    vars.sort();
    vars.dedup();
    let base_ring = QuotientRing::from_relations(vars, spec.base_relations.clone())?;
    if !verify_well_defined(base, &base_ring).well_defined {
        return Err(LndError::BaseNotWellDefined);
    }
    if !base_ring.reduce(&base.apply(&spec.f)).is_zero() {
        return Err(LndError::FNotInKernel);
    }
    Ok(base.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    SVariable,
    Jacobian,
    SuspensionLift,
}

impl WitnessKind {
    pub fn label(self) -> &'static str {
        match self {
            WitnessKind::SVariable => "s_variable",
            WitnessKind::Jacobian => "jacobian",
            WitnessKind::SuspensionLift => "suspension_lift",
        }
    }
}

/// A constructive witness for `d`, when one of the supported constructions
/// applies: `d/dS_1` for `m > 0`, the Jacobian derivation for hypersurfaces
/// with a linear variable, and lifts of a base witness along the Type 2
/// suspension split when it annihilates `f`.
pub fn find_witness(d: &TrinomialDatum) -> Result<Option<(WitnessKind, Derivation)>, LndError> {
    if d.m > 0 {
        return Ok(Some((WitnessKind::SVariable, witness_s_variable(d)?)));
    }
    let rels = relations(d)?;
    if rels.relations.len() == 1 {
        if let Some((u, v)) = jacobian_pair(d) {
            return Ok(Some((WitnessKind::Jacobian, witness_jacobian(d, u, v)?)));
        }
    }
    if d.variety_type == VarietyType::Type2 && rels.relations.len() >= 2 {
        let split = match suspension_split(d) {
            Ok(s) => s,
            Err(_) => return Ok(None),
        };
        if let Some((_, base)) = find_witness(&split.base)? {
            let spec = split
                .suspension_spec()
                .map_err(|e| LndError::WrongShape(e.to_string()))?;
            match witness_suspension_lift(&base, &spec) {
                Ok(lifted) => return Ok(Some((WitnessKind::SuspensionLift, lifted))),
                Err(LndError::FNotInKernel | LndError::BaseNotWellDefined) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(None)
}

/// Outcome of running all three verifications on a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    pub well_defined: WellDefinedCertificate,
    pub nilpotency: NilpotencyCertificate,
    pub exp_preserves_ideal: bool,
}

impl WitnessCheck {
    pub fn verified(&self) -> bool {
        self.well_defined.well_defined
            && self.nilpotency.verdict == NilpotencyVerdict::Proven
            && self.exp_preserves_ideal
    }
}

pub fn check_witness(
    der: &Derivation,
    ring: &QuotientRing,
    bound: usize,
) -> Result<WitnessCheck, LndError> {
    let well_defined = verify_well_defined(der, ring);
    let nilpotency = verify_locally_nilpotent(der, ring, bound);
    let exp_ok = if well_defined.well_defined && nilpotency.verdict == NilpotencyVerdict::Proven {
        exp_preserves_ideal(der, ring, bound)?
    } else {
        false
    };
    Ok(WitnessCheck {
        well_defined,
        nilpotency,
        exp_preserves_ideal: exp_ok,
    })
}
